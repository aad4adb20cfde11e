#pragma once

#include <iosfwd>
#include <string>

#include "zuklab/graph.hpp"

namespace zuklab {

// Edge-list text format:
//
//   vertices N
//   label <index> <text>     (optional, one per labelled vertex)
//   u v mult                 (one line per canonical edge)
//
// Blank lines and lines starting with '#' are ignored.

void write_edge_list(std::ostream& out, const WeightedMultigraph& g);
WeightedMultigraph read_edge_list(std::istream& in);

std::string to_edge_list(const WeightedMultigraph& g);
WeightedMultigraph from_edge_list(const std::string& text);

}  // namespace zuklab
