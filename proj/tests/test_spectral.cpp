#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zuklab/error.hpp"
#include "zuklab/spectral.hpp"

using namespace zuklab;

namespace {

void check_spectrum(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
}

}  // namespace

TEST_CASE("complete bipartite graphs have spectrum 1, 0, ..., 0, -1") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto r = random_walk_spectrum(complete_bipartite(n, n), SolverMode::dense);
    check_spectrum(r.spectrum, oracle::complete_bipartite_spectrum(n));
    REQUIRE(r.lambda_bipartite);
    CHECK(*r.lambda_bipartite == doctest::Approx(0.0).epsilon(1e-8));
  }
}

TEST_CASE("K_{1,1} is connected with lambda2 = -1 and lambda_bipartite 0") {
  const auto r = random_walk_spectrum(complete_bipartite(1, 1), SolverMode::dense);
  CHECK(r.is_connected);
  CHECK(r.lambda2 == doctest::Approx(-1.0));
  CHECK(*r.lambda_bipartite == doctest::Approx(0.0));
}

TEST_CASE("even cycles match cos(2 pi j / 2n)") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto r = random_walk_spectrum(cycle_graph(2 * n), SolverMode::dense);
    check_spectrum(r.spectrum, oracle::cycle_spectrum(2 * n));
    CHECK(r.lambda2 == doctest::Approx(std::cos(M_PI / static_cast<double>(n))).epsilon(1e-8));
  }
}

TEST_CASE("random bipartite multigraphs agree with a general eigensolver") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_bipartite(rng, 30, 3);
    const auto r = random_walk_spectrum(g, SolverMode::dense);
    check_spectrum(r.spectrum, oracle::walk_eigenvalues(g));
    REQUIRE(r.lambda_bipartite);
    CHECK(*r.lambda_bipartite == doctest::Approx(r.lambda2).epsilon(1e-8));
    CHECK(lambda_bipartite_direct(g) == doctest::Approx(r.lambda2).epsilon(1e-8));
  }
}

TEST_CASE("iterative solver agrees with the dense one") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const auto g = oracle::random_bipartite(rng, 30, 2);
    const auto dense = random_walk_spectrum(g, SolverMode::dense);
    const auto iter = random_walk_spectrum(g, SolverMode::iterative, 1e-10);
    CHECK(iter.solver == SolverMode::iterative);
    CHECK(iter.lambda2 == doctest::Approx(dense.lambda2).epsilon(1e-7));
  }
}

TEST_CASE("disconnected graphs report lambda2 = 1 and no lambda_bipartite") {
  const std::vector<Edge> raw{{0, 1, 1}, {2, 3, 1}};
  const auto r = random_walk_spectrum(WeightedMultigraph::build(4, raw));
  CHECK_FALSE(r.is_connected);
  CHECK(r.lambda2 == 1.0);
  CHECK_FALSE(r.lambda_bipartite);
}

TEST_CASE("isolated vertices and empty graphs are rejected") {
  const std::vector<Edge> raw{{0, 1, 1}};
  CHECK_THROWS_AS(random_walk_spectrum(WeightedMultigraph::build(3, raw)), InvalidInput);
  CHECK_THROWS_AS(random_walk_spectrum(WeightedMultigraph::build(2, {})), InvalidInput);
}

TEST_CASE("one-sided expander test") {
  const auto c = random_walk_spectrum(cycle_graph(8), SolverMode::dense);
  CHECK(is_one_sided_expander(c, 0.75));
  CHECK_FALSE(is_one_sided_expander(c, 0.5));
}

TEST_CASE("solver mode names") {
  CHECK(solver_mode_from_string("iterative") == SolverMode::iterative);
  CHECK(to_string(SolverMode::dense) == "dense");
  CHECK_THROWS_AS(solver_mode_from_string("power"), InvalidInput);
}
