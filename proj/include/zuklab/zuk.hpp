#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zuklab/complex.hpp"
#include "zuklab/error.hpp"

namespace zuklab {

/// A scalar cochain on top cells, indexed like PartiteComplex::cells().
/// The norm is the plain l2 norm over cells.
struct CochainField {
  std::vector<double> values;

  double norm() const;
  friend bool operator==(const CochainField&, const CochainField&) = default;
};

/// Equivalence classes of top cells that share a face of type `nu`.
struct NuRelation {
  TypeSet nu = 0;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;  // per cell
};

/// Requires |nu| in {n-1, n}.
NuRelation nu_relation(const PartiteComplex& x, TypeSet nu);

/// Replaces each cell value by the mean over its ~nu class.
CochainField project_nu(const PartiteComplex& x, TypeSet nu, const CochainField& phi);
Eigen::MatrixXd projection_matrix(const PartiteComplex& x, TypeSet nu);

/// T = (n+1)^{-1} sum over |nu| = n of P_nu.
CochainField t_operator(const PartiteComplex& x, const CochainField& phi);
Eigen::MatrixXd t_matrix(const PartiteComplex& x);

/// ||T^i - T^inf|| for i = 0, 1, ... and the geometric fit C r^i over the
/// second half of the sequence.
struct ConvergenceReport {
  std::vector<double> iterates;
  double fitted_rate = 0.0;
  double fitted_constant = 0.0;
};

struct LimitResult {
  Eigen::MatrixXd limit;
  ConvergenceReport report;
};

/// Raised when T^i does not settle, or settles on something other than the
/// projection onto constants.
class LimitError : public Error {
 public:
  LimitError(const std::string& what, ConvergenceReport partial)
      : Error(what), partial_(std::move(partial)) {}
  const ConvergenceReport& partial() const { return partial_; }

 private:
  ConvergenceReport partial_;
};

inline constexpr double kDefaultLimitTol = 1e-12;

/// Powers T until ||T^{i+1} - T^i|| < tol and checks the limit is the
/// averaging matrix (1/N) * ones.
LimitResult iterate_to_limit(const PartiteComplex& x, double tol = kDefaultLimitTol,
                             std::size_t max_iterations = 5000);

/// Least-squares fit of log(values[i]) = log C + i log r over indices
/// [first, values.size()), skipping entries that are not positive.
void fit_geometric(const std::vector<double>& values, std::size_t first, double& rate,
                   double& constant);

/// max(||P1 P2 - P12||, ||P2 P1 - P12||) with P12 = P_{nu1 & nu2}.
/// Requires |nu1| = |nu2| = n and nu1 != nu2.
double cos_angle(const PartiteComplex& x, TypeSet nu1, TypeSet nu2);

/// Largest cos_angle over all pairs of distinct size-n type sets.
double max_pairwise_cos_angle(const PartiteComplex& x);

enum class Verdict { pass, fail, vacuous };
std::string to_string(Verdict v);

struct ZukVerdict {
  Verdict verdict = Verdict::fail;
  std::string reason;
  std::optional<double> max_link_lambda;
  double threshold = 0.0;
  std::optional<double> slack;
  bool gallery_connected = false;
  bool links_connected = false;
  std::size_t links_checked = 0;
};

/// 1 / (8n - 3); n >= 2.
double zuk_threshold(int n);

/// PASS iff gallery connected, every link of an (n-2)-simplex connected and
/// the largest link lambda_bipartite is below zuk_threshold(n).
ZukVerdict zuk_verdict(const PartiteComplex& x);

/// The (gamma, beta) region of the angle criterion:
/// gamma < 1/(8n-3) and beta < 1 + (1 - (8n-3) gamma) / (n - 1 + (3n-1) gamma).
bool admissible(double gamma, double beta, int n);

/// Verdict together with the observed T-iteration behaviour.
struct ZukReport {
  ZukVerdict verdict;
  std::optional<ConvergenceReport> convergence;
  bool converged_outside_guaranteed_region = false;
};

/// Runs iterate_to_limit when the complex has at most `max_cells` cells.
ZukReport zuk_report(const PartiteComplex& x, std::size_t max_cells = 1500);

}  // namespace zuklab
