#pragma once

#include <Eigen/Dense>

#include "zuklab/graph.hpp"

namespace zuklab {

/// Largest singular value (the l2 operator norm). Exactly symmetric input
/// goes through the self-adjoint eigensolver.
double operator_norm(const Eigen::MatrixXd& m);

/// Dense weight matrix W with W(u,v) = m({u,v}).
Eigen::MatrixXd weight_matrix(const WeightedMultigraph& g);

/// Dense random walk A = D^{-1} W. Requires every m(v) > 0.
Eigen::MatrixXd random_walk_matrix(const WeightedMultigraph& g);

/// Dense D^{-1/2} W D^{-1/2}. Requires every m(v) > 0.
Eigen::MatrixXd symmetrized_walk_matrix(const WeightedMultigraph& g);

}  // namespace zuklab
