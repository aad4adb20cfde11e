#pragma once

#include <cstddef>
#include <vector>

#include "zuklab/graph.hpp"
#include "zuklab/presentation.hpp"

namespace zuklab {

/**
 * Link of the identity vertex in the Cayley complex of a positive
 * triangular presentation.
 *
 * Vertices 0..m-1 are s_1..s_m and m..2m-1 are s_1^-1..s_m^-1. A relator
 * s_i s_j s_k contributes {s_j, s_i^-1} to L1, {s_k, s_j^-1} to L2 and
 * {s_i, s_k^-1} to L3; repeated incidences add multiplicity.
 */
struct LinkDecomposition {
  WeightedMultigraph L1;
  WeightedMultigraph L2;
  WeightedMultigraph L3;
  WeightedMultigraph full;
  std::vector<std::size_t> isolated;  // generators in no relator, both copies
};

LinkDecomposition build_link(const Presentation& p);

/// Vertex index of s_i (inverse = false) or s_i^-1 in a link on m generators.
std::size_t link_vertex(std::size_t m, int i, bool inverse);

}  // namespace zuklab
