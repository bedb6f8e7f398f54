#ifndef HAZARD_EDGE_LIST_H_
#define HAZARD_EDGE_LIST_H_

#include <filesystem>
#include <iosfwd>

#include "hazard/graph_spec.h"

namespace hazard {

// Text format:
//
//   # comment (a leading "# label: <text>" line names the model)
//   n <count> <directed|undirected>
//   i j p
//   ...
//
// Probabilities are written with 17 significant digits so a write/read
// cycle reproduces every double exactly. Self-loops are accepted.
// Errors are ParseError carrying the 1-based line number.
GraphSpec read_edge_list(std::istream& in);
GraphSpec read_edge_list(const std::filesystem::path& path);

void write_edge_list(const GraphSpec& spec, std::ostream& out);
void write_edge_list(const GraphSpec& spec, const std::filesystem::path& path);

}  // namespace hazard

#endif  // HAZARD_EDGE_LIST_H_
