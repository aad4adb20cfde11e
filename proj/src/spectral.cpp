#include "zuklab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "zuklab/linalg.hpp"
#include "zuklab/rng.hpp"

namespace zuklab {

std::string to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::automatic: return "auto";
    case SolverMode::dense: return "dense";
    case SolverMode::iterative: return "iterative";
  }
  return "auto";
}

SolverMode solver_mode_from_string(const std::string& name) {
  if (name == "auto" || name == "automatic") return SolverMode::automatic;
  if (name == "dense") return SolverMode::dense;
  if (name == "iterative") return SolverMode::iterative;
  throw InvalidInput("unknown solver mode '" + name + "'");
}

namespace {

using Eigen::Index;
using Eigen::VectorXd;

void check_walkable(const WeightedMultigraph& g) {
  if (g.edges().empty()) throw InvalidInput("random walk needs at least one edge");
  const auto isolated = g.isolated_vertices();
  if (!isolated.empty()) {
    throw InvalidInput("isolated vertex " + std::to_string(isolated.front()) +
                       " has no random walk");
  }
}

// Removes one copy of +1 and, for bipartite graphs, one copy of -1 from a
// descending spectrum and returns the largest remaining magnitude.
double max_nontrivial_magnitude(const std::vector<double>& spectrum, bool bipartite) {
  const std::size_t begin = 1;
  const std::size_t end = bipartite ? spectrum.size() - 1 : spectrum.size();
  double best = 0.0;
  for (std::size_t i = begin; i < end; ++i) best = std::max(best, std::abs(spectrum[i]));
  return best;
}

SpectralReport dense_spectrum(const WeightedMultigraph& g, SpectralReport report, double tol) {
  const Eigen::MatrixXd s = symmetrized_walk_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("dense eigensolver failed");
  const VectorXd& values = solver.eigenvalues();  // ascending
  report.spectrum.assign(values.data(), values.data() + values.size());
  std::reverse(report.spectrum.begin(), report.spectrum.end());
  report.solver = SolverMode::dense;

  // Observed error at the analytically known eigenvalues, floored at the
  // backward-error scale of symmetric QR.
  const double n = static_cast<double>(g.vertex_count());
  double residual = n * std::numeric_limits<double>::epsilon();
  residual = std::max(residual, std::abs(report.spectrum.front() - 1.0));
  if (report.bipartition) residual = std::max(residual, std::abs(report.spectrum.back() + 1.0));
  report.residual = residual;
  if (residual > tol) {
    throw SpectralConvergenceError("dense spectrum misses the trivial eigenvalues by " +
                                       std::to_string(residual),
                                   report.spectrum.size() > 1 ? report.spectrum[1] : -1.0,
                                   residual);
  }

  if (report.is_connected) {
    report.lambda2 = report.spectrum.size() > 1 ? report.spectrum[1] : 1.0;
    if (report.bipartition) {
      report.lambda_bipartite = max_nontrivial_magnitude(report.spectrum, true);
    }
  } else {
    report.lambda2 = 1.0;
  }
  return report;
}

// Symmetric operator x -> D^{-1/2} W D^{-1/2} x on a compressed adjacency.
struct SymmetrizedWalk {
  Adjacency adj;
  VectorXd inv_sqrt_degree;

  explicit SymmetrizedWalk(const WeightedMultigraph& g) : adj(Adjacency::of(g)) {
    const auto w = g.vertex_weights();
    inv_sqrt_degree.resize(static_cast<Index>(w.size()));
    for (std::size_t v = 0; v < w.size(); ++v) {
      inv_sqrt_degree(static_cast<Index>(v)) = 1.0 / std::sqrt(static_cast<double>(w[v]));
    }
  }

  void apply(const VectorXd& x, VectorXd& y) const {
    const Index n = x.size();
    const VectorXd scaled = inv_sqrt_degree.cwiseProduct(x);
    y.resize(n);
    for (Index u = 0; u < n; ++u) {
      double sum = 0.0;
      const auto ui = static_cast<std::size_t>(u);
      for (std::size_t i = adj.offsets[ui]; i < adj.offsets[ui + 1]; ++i) {
        sum += adj.weights[i] * scaled(static_cast<Index>(adj.neighbors[i]));
      }
      y(u) = sum * inv_sqrt_degree(u);
    }
  }
};

void orthogonalize(VectorXd& w, const std::vector<VectorXd>& basis) {
  // Two passes of classical Gram-Schmidt keep the basis orthogonal to
  // working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (const VectorXd& q : basis) w -= q.dot(w) * q;
  }
}

struct LanczosResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Largest eigenvalue of `op` on the orthogonal complement of `deflate`, by
// Lanczos with full reorthogonalization and explicit restarts on the current
// Ritz vector. The error bound is min(r, r^2 / gap) with r the Ritz residual.
LanczosResult lanczos_largest(const SymmetrizedWalk& op, const std::vector<VectorXd>& deflate,
                              double tol, std::size_t max_basis, std::size_t max_restarts) {
  const Index n = op.inv_sqrt_degree.size();
  const auto complement_dim = static_cast<std::size_t>(n) - deflate.size();
  LanczosResult result;

  VectorXd start(n);
  for (Index i = 0; i < n; ++i) {
    start(i) = static_cast<double>(splitmix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-53 - 0.5;
  }
  orthogonalize(start, deflate);
  start.normalize();

  const std::size_t basis_cap = std::min(max_basis, complement_dim);
  for (std::size_t restart = 0; restart <= max_restarts; ++restart) {
    std::vector<VectorXd> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.push_back(start);
    VectorXd w;
    for (std::size_t j = 0;; ++j) {
      op.apply(basis[j], w);
      ++result.iterations;
      const double a = basis[j].dot(w);
      alpha.push_back(a);
      orthogonalize(w, deflate);
      orthogonalize(w, basis);
      const double b = w.norm();

      const auto k = static_cast<Index>(alpha.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz;
      VectorXd diag = Eigen::Map<const VectorXd>(alpha.data(), k);
      VectorXd sub = k > 1 ? VectorXd(Eigen::Map<const VectorXd>(beta.data(), k - 1)) : VectorXd();
      ritz.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const VectorXd& theta = ritz.eigenvalues();  // ascending
      const double top = theta(k - 1);
      const double residual = b * std::abs(ritz.eigenvectors()(k - 1, k - 1));
      double bound = residual;
      if (k > 1) {
        const double gap = top - theta(k - 2);
        if (gap > 0) bound = std::min(bound, residual * residual / gap);
      }
      result.value = top;
      result.error_bound = bound;

      const bool exhausted = basis.size() >= complement_dim;
      const bool invariant = b <= 1e-14;
      if (bound <= tol || exhausted || invariant) {
        result.converged = true;
        if (exhausted || invariant) result.error_bound = std::min(bound, 1e-14);
        return result;
      }
      if (basis.size() >= basis_cap) {
        // Restart from the current Ritz vector.
        VectorXd y = ritz.eigenvectors().col(k - 1);
        VectorXd next = VectorXd::Zero(n);
        for (Index i = 0; i < k; ++i) next += y(i) * basis[static_cast<std::size_t>(i)];
        orthogonalize(next, deflate);
        start = next.normalized();
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }
  }
  return result;
}

SpectralReport iterative_spectrum(const WeightedMultigraph& g, SpectralReport report, double tol) {
  report.solver = SolverMode::iterative;
  if (!report.is_connected) {
    report.lambda2 = 1.0;
    report.residual = 0.0;
    return report;
  }
  const SymmetrizedWalk op(g);
  const Index n = op.inv_sqrt_degree.size();

  // Known eigenvectors of the symmetrized walk: D^{1/2} 1 for +1 and, when
  // bipartite, D^{1/2} (1_{S1} - 1_{S2}) for -1.
  std::vector<VectorXd> deflate;
  VectorXd sqrt_degree = op.inv_sqrt_degree.cwiseInverse();
  deflate.push_back(sqrt_degree.normalized());
  if (report.bipartition) {
    VectorXd signed_vec = sqrt_degree;
    for (Index v = 0; v < n; ++v) {
      if (report.bipartition->side_of[static_cast<std::size_t>(v)] == 1) signed_vec(v) = -signed_vec(v);
    }
    deflate.push_back(signed_vec.normalized());
  }

  if (static_cast<std::size_t>(n) <= deflate.size()) {
    // Only the trivial eigenvalues exist (K2).
    report.lambda2 = -1.0;
    report.lambda_bipartite = 0.0;
    report.residual = 0.0;
    return report;
  }

  const LanczosResult top = lanczos_largest(op, deflate, tol, 400, 60);
  report.iterations = top.iterations;
  report.residual = top.error_bound;
  if (!top.converged) {
    throw SpectralConvergenceError("Lanczos did not reach tolerance " + std::to_string(tol) +
                                       " (bound " + std::to_string(top.error_bound) + ")",
                                   top.value, top.error_bound);
  }
  report.lambda2 = top.value;
  if (report.bipartition) report.lambda_bipartite = std::max(0.0, top.value);
  return report;
}

}  // namespace

SpectralReport random_walk_spectrum(const WeightedMultigraph& g, SolverMode mode,
                                    std::optional<double> tol) {
  check_walkable(g);
  if (mode == SolverMode::automatic) {
    mode = g.vertex_count() <= kDenseVertexLimit ? SolverMode::dense : SolverMode::iterative;
  }
  SpectralReport report;
  report.is_connected = is_connected(g);
  report.bipartition = find_bipartition(g);
  if (mode == SolverMode::dense) return dense_spectrum(g, std::move(report), tol.value_or(kDefaultDenseTol));
  return iterative_spectrum(g, std::move(report), tol.value_or(kDefaultIterativeTol));
}

double lambda_bipartite_direct(const WeightedMultigraph& g) {
  check_walkable(g);
  if (!is_connected(g)) throw InvalidInput("lambda_bipartite_direct: graph is not connected");
  const auto sides = find_bipartition(g);
  if (!sides) throw InvalidInput("lambda_bipartite_direct: graph is not bipartite");

  const auto n = static_cast<Index>(g.vertex_count());
  const auto weights = g.vertex_weights();
  VectorXd degree(n);
  for (Index v = 0; v < n; ++v) degree(v) = static_cast<double>(weights[static_cast<std::size_t>(v)]);
  const double side_mass[2] = {static_cast<double>(g.subset_weight(sides->side1)),
                               static_cast<double>(g.subset_weight(sides->side2))};

  // M_sides: orthogonal projection in l2(V, m) onto functions constant on
  // each side, (M phi)(u) = m(S_i)^{-1} sum_{w in S_i} m(w) phi(w).
  Eigen::MatrixXd sides_projection = Eigen::MatrixXd::Zero(n, n);
  for (Index u = 0; u < n; ++u) {
    const int su = sides->side_of[static_cast<std::size_t>(u)];
    for (Index w = 0; w < n; ++w) {
      if (sides->side_of[static_cast<std::size_t>(w)] == su) {
        sides_projection(u, w) = degree(w) / side_mass[su];
      }
    }
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd op = random_walk_matrix(g) * (identity - sides_projection);
  const VectorXd root = degree.cwiseSqrt();
  const Eigen::MatrixXd conjugated = root.asDiagonal() * op * root.cwiseInverse().asDiagonal();
  return operator_norm(conjugated);
}

bool is_one_sided_expander(const SpectralReport& report, double lambda) {
  if (!report.is_connected) return false;
  if (report.spectrum.empty()) return report.lambda2 <= lambda;
  return std::all_of(report.spectrum.begin() + 1, report.spectrum.end(),
                     [&](double x) { return x <= lambda; });
}

}  // namespace zuklab
