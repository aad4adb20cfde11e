#include "zuklab/certify.hpp"

#include <cmath>

#include "zuklab/error.hpp"
#include "zuklab/link.hpp"

namespace zuklab {

namespace {

double lg(double x, LogBase base) { return base == LogBase::natural ? std::log(x) : std::log10(x); }

void check_density_range(int k, int l, double d) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (l < 3 || l % 3 != 0) throw InvalidInput("l must be a positive multiple of 3");
  if (!(d > 1.0 / 3.0 && d < 0.5)) throw InvalidInput("d must lie in (1/3, 1/2)");
}

// Numerator of p_max in the density model, in units of log 26.
double density_exponent(int k, int l, double d, LogBase base) {
  return l * (d - 1.0 / 3.0) * lg(2.0 * k - 1.0, base) - 2.0 * lg(20.0 * std::sqrt(2.0), base);
}

}  // namespace

double theta_bound(double lambda, double theta) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidInput("lambda must lie in (0, 1)");
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidInput("theta must lie in (0, 1]");
  return 2.0 * std::pow(lambda, theta);
}

std::optional<double> pmax_from_lambda(double lambda, int n, LogBase base) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidInput("lambda must lie in (0, 1)");
  if (n < 2) throw InvalidInput("n must be at least 2");
  const double target = 2.0 * (8.0 * n - 3.0);
  const double p = 2.0 * lg(1.0 / lambda, base) / lg(target, base);
  if (p < 2.0 - 1e-12) return std::nullopt;
  return p;
}

std::optional<double> theta0_mplus(double alpha, double C, double m, LogBase base) {
  if (!(alpha > 1.5 && alpha < 2.0)) throw InvalidInput("alpha must lie in (3/2, 2)");
  if (!(C > 0.0)) throw InvalidInput("C must be positive");
  if (!(m >= 2.0)) throw InvalidInput("m must be at least 2");
  const double denom = (1.0 - alpha / 2.0) * lg(m, base) + 0.5 * lg(C, base) - lg(10.0, base);
  if (!(denom > 0.0)) return std::nullopt;
  const double theta = lg(26.0, base) / denom;
  if (theta > 1.0) return std::nullopt;
  return theta;
}

std::optional<double> pmax_mplus(double alpha, double C, double m, LogBase base) {
  const auto theta = theta0_mplus(alpha, C, m, base);
  if (!theta) return std::nullopt;
  return (2.0 * (1.0 - alpha / 2.0) * lg(m, base) + lg(C, base) - 2.0 * lg(10.0, base)) /
         lg(26.0, base);
}

std::optional<double> pmax_density(int k, int l, double d, LogBase base) {
  check_density_range(k, l, d);
  const double p = density_exponent(k, l, d, base) / lg(26.0, base);
  if (p < 2.0) return std::nullopt;
  return p;
}

std::optional<double> theta0_density(int k, int l, double d, LogBase base) {
  check_density_range(k, l, d);
  const double denom =
      (l / 6.0) * (3.0 * d - 1.0) * lg(2.0 * k - 1.0, base) - lg(20.0 * std::sqrt(2.0), base);
  if (!(denom > 0.0)) return std::nullopt;
  const double theta = lg(26.0, base) / denom;
  if (theta > 1.0) return std::nullopt;
  return theta;
}

ConfdimBounds confdim_bounds(int k, int l, double d, LogBase base) {
  if (d >= 0.5) throw InvalidInput("d must be below 1/2");
  ConfdimBounds out;
  out.lower = pmax_density(k, l, d, base);
  out.upper = (16.0 / lg(2.0, base)) * (1.0 / (1.0 - 2.0 * d)) * lg(2.0 * k - 1.0, base) * l;
  return out;
}

ReductionParams reduction_params(int k, int l, double d) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (l < 3 || l % 3 != 0) throw InvalidInput("l must be a positive multiple of 3");
  if (!(d >= 0.0 && d <= 1.0)) throw InvalidInput("d must lie in [0, 1]");
  ReductionParams out;
  out.m_exact = 0.5 * std::pow(2.0 * k - 1.0, l / 3.0);
  if (!(out.m_exact < std::ldexp(1.0, 62))) throw DeskScaleExceeded("m above 2^62");
  out.m = static_cast<std::uint64_t>(std::floor(out.m_exact));
  out.rounded = static_cast<double>(out.m) != out.m_exact;
  out.alpha = 3.0 * (1.0 - d);
  out.C = 0.25;
  out.rho = 1.0 / (4.0 * std::pow(static_cast<double>(out.m), out.alpha));
  out.probability_loss = 6.0 / std::pow(2.0 * k - 1.0, l / 2.0);
  return out;
}

Certificate certify_presentation(const Presentation& p, int n, SolverMode mode,
                                 std::optional<double> tol) {
  Certificate cert;
  cert.threshold = zuk_threshold(n);
  cert.generators = static_cast<std::size_t>(p.alphabet_size);
  cert.relators = p.relators.size();

  const LinkDecomposition link = build_link(p);
  if (link.full.edges().empty() || !link.isolated.empty() || !is_connected(link.full)) {
    cert.reason = "link disconnected";
    return cert;
  }
  const SpectralReport spec = random_walk_spectrum(link.full, mode, tol);
  cert.solver = spec.solver;
  cert.residual = spec.residual;
  if (!spec.is_connected || !spec.lambda_bipartite) {
    cert.reason = "link disconnected";
    return cert;
  }
  cert.link_connected = true;

  double lambda = *spec.lambda_bipartite;
  if (lambda <= std::max(spec.residual, 1e-12)) {
    lambda = 0.0;
    cert.lambda_zero = true;
  }
  cert.lambda_measured = lambda;
  cert.slack_eps = cert.threshold - lambda;

  if (cert.lambda_zero) {
    cert.p_range_note = "lambda_zero: lambda=0, formula diverges; report lambda=0";
  } else if (const auto pm = pmax_from_lambda(std::min(lambda, 1.0 - 1e-15), n)) {
    cert.p_max = *pm;
    cert.theta0 = 2.0 / *pm;
  } else {
    cert.p_range_note = "lambda >= 1/" + std::to_string(2 * (8 * n - 3)) +
                        ": theta_0 > 1, no L^p range";
  }

  if (lambda < cert.threshold) {
    cert.verdict = Verdict::pass;
    cert.reason = "link lambda below threshold";
  } else {
    cert.reason = "link lambda at or above threshold";
  }
  return cert;
}

Certificate density_bounds_certificate(int k, int l, double d) {
  Certificate cert;
  cert.threshold = zuk_threshold(2);
  const ConfdimBounds bounds = confdim_bounds(k, l, d);
  cert.confdim_lower = bounds.lower;
  cert.confdim_upper = bounds.upper;
  cert.p_max = pmax_density(k, l, d);
  cert.theta0 = theta0_density(k, l, d);
  if (cert.p_max) {
    cert.verdict = Verdict::pass;
    cert.reason = "density bound gives p_max >= 2";
  } else {
    cert.verdict = Verdict::vacuous;
    cert.reason = "l too small: p_max below 2 (theta_0 > 1)";
    cert.p_range_note = cert.reason;
  }
  return cert;
}

}  // namespace zuklab
