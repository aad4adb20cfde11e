#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zuklab/error.hpp"
#include "zuklab/graph.hpp"

namespace zuklab {

enum class SolverMode { automatic, dense, iterative };

std::string to_string(SolverMode mode);
SolverMode solver_mode_from_string(const std::string& name);

/// Graphs with at most this many vertices use the dense eigensolver when the
/// mode is `automatic`.
inline constexpr std::size_t kDenseVertexLimit = 2048;
inline constexpr double kDefaultDenseTol = 1e-9;
inline constexpr double kDefaultIterativeTol = 1e-6;

/**
 * Spectrum of the random walk A on l2(V, m).
 *
 * `spectrum` is sorted descending and only filled by the dense solver.
 * For a disconnected graph lambda2 is reported as 1 and lambda_bipartite is
 * absent. `residual` is the accuracy actually achieved.
 */
struct SpectralReport {
  bool is_connected = false;
  std::optional<Bipartition> bipartition;
  std::vector<double> spectrum;
  double lambda2 = 1.0;
  std::optional<double> lambda_bipartite;
  SolverMode solver = SolverMode::dense;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Thrown by the iterative solver when it runs out of iterations.
class SpectralConvergenceError : public Error {
 public:
  SpectralConvergenceError(const std::string& what, double best_estimate, double residual)
      : Error(what), best_estimate_(best_estimate), residual_(residual) {}
  double best_estimate() const { return best_estimate_; }
  double residual() const { return residual_; }

 private:
  double best_estimate_;
  double residual_;
};

/// Requires at least one edge and no isolated vertices. `tol` defaults to
/// kDefaultDenseTol / kDefaultIterativeTol for the chosen solver.
SpectralReport random_walk_spectrum(const WeightedMultigraph& g,
                                    SolverMode mode = SolverMode::automatic,
                                    std::optional<double> tol = std::nullopt);

/// ||A (I - M_sides)|| on l2(V, m), as the largest singular value of
/// D^{1/2} A (I - M_sides) D^{-1/2}. Dense; requires a connected bipartite graph.
double lambda_bipartite_direct(const WeightedMultigraph& g);

/// True iff the report's graph is connected and its spectrum lies in
/// [-1, lambda] u {1}.
bool is_one_sided_expander(const SpectralReport& report, double lambda);

}  // namespace zuklab
