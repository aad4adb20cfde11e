#include <doctest.h>

#include <cmath>

#include "zuklab/certify.hpp"
#include "zuklab/error.hpp"

using namespace zuklab;

namespace {

// Density-model p_max, evaluated in base 2 straight from the closed form.
double density_oracle(int k, int l, double d) {
  const double num = l * (d - 1.0 / 3.0) * std::log2(2.0 * k - 1.0) - 2.0 * std::log2(20.0 * std::sqrt(2.0));
  return num / std::log2(26.0);
}

}  // namespace

TEST_CASE("density p_max at k = 2, l = 300, d = 0.4") {
  const auto p = pmax_density(2, 300, 0.4);
  REQUIRE(p);
  CHECK(*p == doctest::Approx(4.69).epsilon(0.01 / 4.69));
  CHECK(*p == doctest::Approx(density_oracle(2, 300, 0.4)).epsilon(1e-12));
  CHECK(*theta0_density(2, 300, 0.4) == doctest::Approx(2.0 / *p).epsilon(1e-12));
}

TEST_CASE("log base does not matter") {
  for (int l : {150, 300, 600}) {
    for (double d : {0.35, 0.4, 0.45}) {
      const auto a = pmax_density(2, l, d, LogBase::natural);
      const auto b = pmax_density(2, l, d, LogBase::ten);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(std::abs(*a - *b) < 1e-12);
    }
  }
  CHECK(std::abs(*pmax_mplus(1.6, 1.0, 1e12, LogBase::natural) -
                 *pmax_mplus(1.6, 1.0, 1e12, LogBase::ten)) < 1e-12);
}

TEST_CASE("M+ bound at the reduction parameters exceeds the density bound by (2-3d) lg 2 / lg 26") {
  for (int k : {2, 3}) {
    for (int l : {300, 600}) {
      for (double d : {0.4, 0.45}) {
        const double m = 0.5 * std::pow(2.0 * k - 1.0, l / 3.0);
        const auto mp = pmax_mplus(3.0 * (1.0 - d), 0.25, m);
        const auto dp = pmax_density(k, l, d);
        REQUIRE(mp);
        REQUIRE(dp);
        CHECK(*mp - *dp == doctest::Approx((2.0 - 3.0 * d) * std::log(2.0) / std::log(26.0)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("p_max from lambda: 1/26 gives exactly 2") {
  CHECK(*pmax_from_lambda(1.0 / 26.0) == doctest::Approx(2.0));
  CHECK_FALSE(pmax_from_lambda(1.0 / 25.0));
  CHECK(*pmax_from_lambda(1.0 / 676.0) == doctest::Approx(4.0));
  CHECK(*pmax_from_lambda(1.0 / 42.0, 3) == doctest::Approx(2.0));
  CHECK_THROWS_AS(pmax_from_lambda(0.0), InvalidInput);
}

TEST_CASE("theta bound is 2 lambda^theta") {
  CHECK(theta_bound(0.25, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("M+ theta0 absent when the denominator is too small") {
  CHECK_FALSE(theta0_mplus(1.6, 1.0, 1000.0));
  CHECK_FALSE(pmax_mplus(1.6, 1.0, 1000.0));
  const auto t = theta0_mplus(1.6, 1.0, 1e20);
  REQUIRE(t);
  CHECK(*t == doctest::Approx(2.0 / *pmax_mplus(1.6, 1.0, 1e20)));
}

TEST_CASE("conformal dimension bounds") {
  const auto b = confdim_bounds(2, 300, 0.4);
  REQUIRE(b.lower);
  CHECK(*b.lower <= b.upper);
  CHECK(b.upper == doctest::Approx(16.0 / std::log(2.0) / 0.2 * std::log(3.0) * 300.0));
  CHECK_FALSE(confdim_bounds(2, 6, 0.4).lower);
}

TEST_CASE("reduction parameters") {
  const auto r = reduction_params(2, 6, 0.4);
  CHECK(r.m_exact == doctest::Approx(4.5));
  CHECK(r.m == 4);
  CHECK(r.rounded);
  CHECK(r.alpha == doctest::Approx(1.8));
  CHECK(r.rho == doctest::Approx(0.25 / std::pow(4.0, 1.8)));
  CHECK(r.probability_loss == doctest::Approx(6.0 / 27.0));
  CHECK_THROWS_AS(reduction_params(2, 200, 0.4), InvalidInput);
  CHECK_THROWS_AS(reduction_params(3, 300, 0.4), DeskScaleExceeded);
}

TEST_CASE("complete link certifies with lambda_zero") {
  const auto c = certify_presentation(sample_mplus(3, 1.0, 1));
  CHECK(c.verdict == Verdict::pass);
  CHECK(c.lambda_zero);
  CHECK(*c.lambda_measured == 0.0);
  CHECK_FALSE(c.p_max);
}

TEST_CASE("empty presentation fails as disconnected") {
  const auto c = certify_presentation(Presentation{3, true, {}});
  CHECK(c.verdict == Verdict::fail);
  CHECK(c.reason == "link disconnected");
}

TEST_CASE("sparse M+ link fails the threshold") {
  const auto c = certify_presentation(sample_mplus(50, std::pow(50.0, -1.6), 3));
  CHECK(c.verdict == Verdict::fail);
}

TEST_CASE("density bounds certificate is VACUOUS for short relators") {
  CHECK(density_bounds_certificate(2, 6, 0.4).verdict == Verdict::vacuous);
  CHECK(density_bounds_certificate(2, 300, 0.4).verdict == Verdict::pass);
}
