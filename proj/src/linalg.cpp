#include "zuklab/linalg.hpp"

#include <cmath>

#include "zuklab/error.hpp"

namespace zuklab {

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && m == m.transpose()) {
    // Exactly symmetric: the norm is the largest |eigenvalue|.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

Eigen::MatrixXd weight_matrix(const WeightedMultigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    w(u, v) = w(v, u) = static_cast<double>(e.mult);
  }
  return w;
}

namespace {

Eigen::VectorXd positive_degrees(const WeightedMultigraph& g) {
  const auto weights = g.vertex_weights();
  Eigen::VectorXd d(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] == 0) throw InvalidInput("isolated vertex " + std::to_string(v));
    d(static_cast<Eigen::Index>(v)) = static_cast<double>(weights[v]);
  }
  return d;
}

}  // namespace

Eigen::MatrixXd random_walk_matrix(const WeightedMultigraph& g) {
  const Eigen::VectorXd d = positive_degrees(g);
  return d.cwiseInverse().asDiagonal() * weight_matrix(g);
}

Eigen::MatrixXd symmetrized_walk_matrix(const WeightedMultigraph& g) {
  const Eigen::VectorXd s = positive_degrees(g).cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * weight_matrix(g) * s.asDiagonal();
}

}  // namespace zuklab
