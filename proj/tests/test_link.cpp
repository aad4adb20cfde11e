#include <doctest.h>

#include "zuklab/link.hpp"
#include "zuklab/presentation.hpp"
#include "zuklab/spectral.hpp"

using namespace zuklab;

TEST_CASE("single relator s1 s2 s3 gives three edges, one per part") {
  const Presentation p{3, true, {{1, 2, 3}}};
  const LinkDecomposition link = build_link(p);
  const std::size_t m = 3;
  // {s_j, s_i^-1}, {s_k, s_j^-1}, {s_i, s_k^-1} with (i, j, k) = (1, 2, 3)
  CHECK(link.L1.multiplicity(1, m + 0) == 1);
  CHECK(link.L2.multiplicity(2, m + 1) == 1);
  CHECK(link.L3.multiplicity(0, m + 2) == 1);
  CHECK(link.full.edges().size() == 3);
  CHECK(link.full.labels()[1] == "s2");
  CHECK(link.full.labels()[m] == "s1^-1");
  CHECK(link_vertex(m, 2, true) == 4);
}

TEST_CASE("repeated incidences add multiplicity") {
  const Presentation p{2, true, {{1, 1, 1}, {2, 1, 1}}};
  const LinkDecomposition link = build_link(p);
  CHECK(link.full.multiplicity(0, 2) == 4);
  CHECK(link.full.multiplicity(1, 2) == 1);
  CHECK(link.full.total_multiplicity() == 6);
}

TEST_CASE("edge count is three per relator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = sample_mplus(30, 0.02, seed);
    CHECK(build_link(p).full.total_multiplicity() == 3 * p.relators.size());
  }
}

TEST_CASE("unused generators are flagged isolated") {
  const Presentation p{3, true, {{1, 2, 1}}};
  const LinkDecomposition link = build_link(p);
  CHECK(link.isolated == std::vector<std::size_t>{2, 5});
}

TEST_CASE("rho = 1 link is complete bipartite with lambda 0") {
  const auto link = build_link(sample_mplus(4, 1.0, 1));
  const auto r = random_walk_spectrum(link.full);
  REQUIRE(r.lambda_bipartite);
  CHECK(std::abs(*r.lambda_bipartite) < 1e-9);
}

TEST_CASE("non-positive presentations have no link") {
  CHECK_THROWS(build_link(Presentation{2, false, {{1, -2, 1}}}));
}
