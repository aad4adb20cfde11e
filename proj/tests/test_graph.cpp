#include <doctest.h>

#include <sstream>

#include "zuklab/error.hpp"
#include "zuklab/graph.hpp"
#include "zuklab/graph_io.hpp"

using namespace zuklab;

TEST_CASE("parallel edges merge into multiplicity") {
  const std::vector<Edge> raw{{0, 1, 1}, {1, 0, 2}, {1, 2, 1}};
  const auto g = WeightedMultigraph::build(3, raw);
  CHECK(g.edges().size() == 2);
  CHECK(g.multiplicity(0, 1) == 3);
  CHECK(g.multiplicity(2, 1) == 1);
  CHECK(g.total_multiplicity() == 4);
  CHECK(g.vertex_weights()[1] == doctest::Approx(4.0));
}

TEST_CASE("loops and out-of-range endpoints are rejected") {
  const std::vector<Edge> loop{{1, 1, 1}};
  CHECK_THROWS_AS(WeightedMultigraph::build(2, loop), InvalidInput);
  const std::vector<Edge> far{{0, 5, 1}};
  CHECK_THROWS_AS(WeightedMultigraph::build(2, far), InvalidInput);
}

TEST_CASE("isolated vertices and connectivity") {
  const std::vector<Edge> raw{{0, 1, 1}};
  const auto g = WeightedMultigraph::build(3, raw);
  CHECK(g.isolated_vertices() == std::vector<std::size_t>{2});
  CHECK_FALSE(is_connected(g));
  CHECK(is_connected(cycle_graph(7)));
}

TEST_CASE("bipartition of even and odd cycles") {
  const auto even = find_bipartition(cycle_graph(6));
  REQUIRE(even);
  CHECK(even->side1.size() == 3);
  CHECK(even->side2.size() == 3);
  CHECK_FALSE(find_bipartition(cycle_graph(5)));
}

TEST_CASE("union adds multiplicities and stripping removes them") {
  const auto k = complete_bipartite(2, 2);
  const std::vector<WeightedMultigraph> parts{k, k};
  const auto u = union_graphs(parts);
  CHECK(u.multiplicity(0, 2) == 2);
  CHECK(u.total_multiplicity() == 8);
  const auto s = strip_multi_edges(u);
  CHECK(s.simple.total_multiplicity() == 4);
  CHECK(s.removed.total_multiplicity() == 4);
}

TEST_CASE("edge list round trip keeps labels and multiplicities") {
  const std::vector<Edge> raw{{0, 1, 3}, {1, 2, 1}};
  const auto g = WeightedMultigraph::build(3, raw, {"a", "b", "c"});
  const auto back = from_edge_list(to_edge_list(g));
  CHECK(back.edges() == g.edges());
  CHECK(back.labels() == g.labels());
}

TEST_CASE("malformed edge list is rejected") {
  CHECK_THROWS_AS(from_edge_list("vertices 3\n0 x 1\n"), InvalidInput);
}
