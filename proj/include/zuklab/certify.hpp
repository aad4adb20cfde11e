#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zuklab/presentation.hpp"
#include "zuklab/spectral.hpp"
#include "zuklab/zuk.hpp"

namespace zuklab {

/// Every bound below is a ratio of logarithms, so the base only changes
/// rounding. `ten` exists to check that.
enum class LogBase { natural, ten };

/// 2 lambda^theta, the norm bound in a strictly theta-Hilbertian space.
double theta_bound(double lambda, double theta);

/// Largest p with 2 lambda^{2/p} <= 1/(8n-3): 2 log(1/lambda) / log(2(8n-3)).
/// Absent when that is below 2. Requires 0 < lambda < 1.
std::optional<double> pmax_from_lambda(double lambda, int n = 2, LogBase base = LogBase::natural);

/// theta_0 = log 26 / ((1 - alpha/2) log m + log(C)/2 - log 10) when it lies
/// in (0, 1]. Requires 3/2 < alpha < 2, C > 0, m >= 2.
std::optional<double> theta0_mplus(double alpha, double C, double m, LogBase base = LogBase::natural);

/// 2 / theta_0 from theta0_mplus.
std::optional<double> pmax_mplus(double alpha, double C, double m, LogBase base = LogBase::natural);

/// (l (d - 1/3) log(2k-1) - 2 log(20 sqrt 2)) / log 26 when >= 2.
/// Requires 1/3 < d < 1/2, k >= 2, 3 | l.
std::optional<double> pmax_density(int k, int l, double d, LogBase base = LogBase::natural);
std::optional<double> theta0_density(int k, int l, double d, LogBase base = LogBase::natural);

struct ConfdimBounds {
  std::optional<double> lower;
  double upper = 0.0;
};

/// lower = pmax_density; upper = (16 / log 2) (1 / (1 - 2d)) log(2k-1) l.
ConfdimBounds confdim_bounds(int k, int l, double d, LogBase base = LogBase::natural);

/// M+ parameters that a density-model group reduces to.
struct ReductionParams {
  std::uint64_t m = 0;        // floor of m_exact
  double m_exact = 0.0;       // (2k-1)^{l/3} / 2
  bool rounded = false;
  double rho = 0.0;           // 1 / (4 m^{3(1-d)}) with the integer m
  double alpha = 0.0;         // 3(1-d)
  double C = 0.25;
  double probability_loss = 0.0;  // 6 / (2k-1)^{l/2}
};

/// Requires 3 | l, k >= 2, d in [0, 1]; m_exact must stay below 2^62.
ReductionParams reduction_params(int k, int l, double d);

/**
 * Outcome of the spectral criterion on the link of an M+ presentation.
 *
 * `p_max` is present only when lambda < 1/26 and lambda > 0; a complete
 * bipartite link sets `lambda_zero` instead of reporting an infinite range.
 */
struct Certificate {
  std::optional<ModelParams> params;
  std::size_t generators = 0;
  std::size_t relators = 0;
  bool link_connected = false;
  std::optional<double> lambda_measured;
  bool lambda_zero = false;
  double residual = 0.0;
  SolverMode solver = SolverMode::dense;
  double threshold = 0.0;
  std::optional<double> slack_eps;
  std::optional<double> theta0;
  std::optional<double> p_max;
  std::string p_range_note;
  std::optional<double> confdim_lower;
  std::optional<double> confdim_upper;
  Verdict verdict = Verdict::fail;
  std::string reason;
};

/// build_link -> spectrum -> thresholds. PASS iff the link is connected and
/// its lambda_bipartite is below 1/(8n-3).
Certificate certify_presentation(const Presentation& p, int n = 2,
                                 SolverMode mode = SolverMode::automatic,
                                 std::optional<double> tol = std::nullopt);

/// Formula-only certificate for the density model: PASS when pmax_density
/// exists, VACUOUS otherwise.
Certificate density_bounds_certificate(int k, int l, double d);

}  // namespace zuklab
