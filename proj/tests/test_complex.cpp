#include <doctest.h>

#include "zuklab/complex.hpp"
#include "zuklab/error.hpp"

using namespace zuklab;

TEST_CASE("complete partite complex K_{2,2,2}") {
  const auto x = complete_partite_complex({2, 2, 2});
  CHECK(x.dimension() == 2);
  CHECK(x.cell_count() == 8);
  CHECK(x.faces(1).size() == 12);
  CHECK(x.faces(0).size() == 6);
  CHECK(is_gallery_connected(x));
}

TEST_CASE("weights count top cells through a face") {
  const auto x = complete_partite_complex({2, 2, 2});
  CHECK(x.coface_count({0}) == 4);
  CHECK(x.coface_count({0, 2}) == 2);
  CHECK(x.weight({0, 2, 4}) == doctest::Approx(1.0));
  CHECK(x.weight({0, 2}) == doctest::Approx(2.0));
  CHECK_FALSE(x.contains({0, 1}));
}

TEST_CASE("vertex link of K_{2,2,2} is K_{2,2} with unit multiplicity") {
  const auto x = complete_partite_complex({2, 2, 2});
  const Link l = link(x, {0});
  CHECK(l.graph.vertex_count() == 4);
  CHECK(l.graph.edges().size() == 4);
  CHECK(l.graph.total_multiplicity() == 4);
}

TEST_CASE("build rejects cells with repeated types or wrong size") {
  CHECK_THROWS_AS(PartiteComplex::build(2, {0, 0, 1}, {{0, 1, 2}}), InvalidInput);
  CHECK_THROWS_AS(PartiteComplex::build(2, {0, 1, 2}, {{0, 1}}), InvalidInput);
}

TEST_CASE("two triangles sharing only a vertex are not gallery connected") {
  const auto x = PartiteComplex::build(2, {0, 1, 2, 1, 2}, {{0, 1, 2}, {0, 3, 4}});
  CHECK_FALSE(is_gallery_connected(x));
}

TEST_CASE("random partite complex keeps the type structure") {
  Rng rng = make_rng(3);
  const auto x = random_partite_complex({3, 3, 3}, 0.5, rng);
  for (const Simplex& c : x.cells()) {
    CHECK(x.type_of(c) == 0b111u);
  }
}

TEST_CASE("type sets") {
  CHECK(type_set({0, 2}) == 0b101u);
  CHECK(type_count(type_set({0, 1, 2})) == 3);
}
