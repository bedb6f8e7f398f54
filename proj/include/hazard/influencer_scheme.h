#ifndef HAZARD_INFLUENCER_SCHEME_H_
#define HAZARD_INFLUENCER_SCHEME_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hazard/graph_spec.h"

namespace hazard {

// Sorted, duplicate-free node set.
using NodeSet = std::vector<NodeId>;

// A fixed influencer set (worst-case scenario).
struct FixedInfluencers {
  NodeSet nodes;
};
// n0 influencers drawn uniformly among all subsets of that size.
struct UniformInfluencers {
  std::size_t n0 = 0;
};
// Each node is an influencer independently with probability q.
struct BernoulliInfluencers {
  double q = 0.0;
};

using InfluencerScheme =
    std::variant<FixedInfluencers, UniformInfluencers, BernoulliInfluencers>;

// Sorts and removes duplicates.
NodeSet make_node_set(std::vector<NodeId> nodes);

// Throws IndexError / DomainError if the scheme does not fit n nodes.
void validate(const InfluencerScheme& scheme, std::size_t n);

// "fixed:0,3,4" (or "fixed:" for the empty set), "uniform:<n0>",
// "bernoulli:<q>". Throws DomainError on malformed text.
InfluencerScheme parse_scheme(std::string_view text);
std::string to_string(const InfluencerScheme& scheme);

}  // namespace hazard

#endif  // HAZARD_INFLUENCER_SCHEME_H_
