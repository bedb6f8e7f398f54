#include "hazard/influencer_scheme.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "hazard/error.h"

namespace hazard {
namespace {

template <typename T>
T parse_token(std::string_view tok, std::string_view whole) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw DomainError(fmt::format("bad value '{}' in scenario '{}'", tok, whole));
  }
  return value;
}

}  // namespace

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

void validate(const InfluencerScheme& scheme, std::size_t n) {
  if (const auto* f = std::get_if<FixedInfluencers>(&scheme)) {
    for (NodeId v : f->nodes) {
      if (v >= n) throw IndexError(fmt::format("influencer {} outside [0, {})", v, n));
    }
  } else if (const auto* u = std::get_if<UniformInfluencers>(&scheme)) {
    if (u->n0 > n) throw DomainError(fmt::format("n0 = {} exceeds n = {}", u->n0, n));
  } else {
    const double q = std::get<BernoulliInfluencers>(scheme).q;
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("q = {} outside [0, 1]", q));
  }
}

InfluencerScheme parse_scheme(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError(fmt::format("scenario '{}' must be kind:value", text));
  }
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (kind == "fixed") {
    std::vector<NodeId> nodes;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      const auto comma = rest.find(',', pos);
      const auto tok = rest.substr(pos, comma == std::string_view::npos ? rest.size() - pos
                                                                        : comma - pos);
      nodes.push_back(parse_token<NodeId>(tok, text));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return FixedInfluencers{make_node_set(std::move(nodes))};
  }
  if (kind == "uniform") return UniformInfluencers{parse_token<std::size_t>(rest, text)};
  if (kind == "bernoulli") {
    const double q = parse_token<double>(rest, text);
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError(fmt::format("q = {} outside [0, 1]", q));
    return BernoulliInfluencers{q};
  }
  throw DomainError(fmt::format("unknown scenario kind '{}'", kind));
}

std::string to_string(const InfluencerScheme& scheme) {
  if (const auto* f = std::get_if<FixedInfluencers>(&scheme)) {
    return fmt::format("fixed:{}", fmt::join(f->nodes, ","));
  }
  if (const auto* u = std::get_if<UniformInfluencers>(&scheme)) {
    return fmt::format("uniform:{}", u->n0);
  }
  return fmt::format("bernoulli:{}", std::get<BernoulliInfluencers>(scheme).q);
}

}  // namespace hazard
