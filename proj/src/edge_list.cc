#include "hazard/edge_list.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "hazard/error.h"

namespace hazard {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
T parse_number(const std::string& tok, std::size_t line, const char* what) {
  T value{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("bad {} '{}'", what, tok));
  }
  return value;
}

}  // namespace

GraphSpec read_edge_list(std::istream& in) {
  std::string label;
  std::size_t n = 0;
  bool have_header = false;
  Orientation orientation = Orientation::kUndirected;
  std::vector<EdgeProbability> entries;
  std::set<std::pair<NodeId, NodeId>> seen;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      constexpr std::string_view kLabel = "# label:";
      if (!have_header && text.starts_with(kLabel)) {
        label = std::string(trim(text.substr(kLabel.size())));
      }
      continue;
    }
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = trim(text.substr(0, hash));
    }
    const auto tok = split(text);
    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "n") {
        throw ParseError(line, "expected header 'n <count> <directed|undirected>'");
      }
      n = parse_number<std::size_t>(tok[1], line, "node count");
      if (n < 1 || n > kMaxNodes) throw ParseError(line, "node count out of range");
      if (tok[2] == "directed") {
        orientation = Orientation::kDirected;
      } else if (tok[2] != "undirected") {
        throw ParseError(line, fmt::format("unknown orientation '{}'", tok[2]));
      }
      have_header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError(line, "expected 'i j p'");
    auto i = parse_number<NodeId>(tok[0], line, "node index");
    auto j = parse_number<NodeId>(tok[1], line, "node index");
    const double p = parse_number<double>(tok[2], line, "probability");
    if (i >= n || j >= n) {
      throw ParseError(line, fmt::format("node index outside [0, {})", n));
    }
    if (!(p >= 0.0 && p < 1.0)) {
      throw ParseError(line, fmt::format("probability {} outside [0, 1)", tok[2]));
    }
    if (orientation == Orientation::kUndirected && i > j) std::swap(i, j);
    if (!seen.emplace(i, j).second) {
      throw ParseError(line, fmt::format("duplicate pair ({}, {})", i, j));
    }
    entries.push_back({i, j, p});
  }
  if (!have_header) throw ParseError(line, "missing header line");
  return GraphSpec(n, orientation, std::move(entries), std::move(label),
                   /*allow_self_loops=*/true);
}

GraphSpec read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, fmt::format("cannot open '{}'", path.string()));
  return read_edge_list(in);
}

void write_edge_list(const GraphSpec& spec, std::ostream& out) {
  if (!spec.label().empty()) out << "# label: " << spec.label() << '\n';
  out << "n " << spec.num_nodes() << ' '
      << (spec.undirected() ? "undirected" : "directed") << '\n';
  spec.for_each_entry([&](const EdgeProbability& e) {
    out << fmt::format("{} {} {:.17g}\n", e.from, e.to, e.p);
  });
}

void write_edge_list(const GraphSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  write_edge_list(spec, out);
}

}  // namespace hazard
