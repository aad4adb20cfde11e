#pragma once

// Reference computations that share no code with the library: plain dense
// matrices, a general (non-symmetric) eigensolver and brute-force enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "zuklab/graph.hpp"

namespace oracle {

/// Eigenvalues of A = D^-1 W from scratch, real parts sorted descending.
inline std::vector<double> walk_eigenvalues(const zuklab::WeightedMultigraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const zuklab::Edge& e : g.edges()) {
    w(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) += static_cast<double>(e.mult);
    w(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) += static_cast<double>(e.mult);
  }
  for (Eigen::Index i = 0; i < n; ++i) w.row(i) /= w.row(i).sum();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(w, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// Walk spectrum of K_{n,n}: 1, then 2n-2 zeros, then -1.
inline std::vector<double> complete_bipartite_spectrum(std::size_t n) {
  std::vector<double> s(2 * n, 0.0);
  s.front() = 1.0;
  s.back() = -1.0;
  return s;
}

/// Walk spectrum of the cycle on n vertices: cos(2 pi j / n).
inline std::vector<double> cycle_spectrum(std::size_t n) {
  std::vector<double> s;
  for (std::size_t j = 0; j < n; ++j) s.push_back(std::cos(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)));
  std::sort(s.rbegin(), s.rend());
  return s;
}

/// Random connected bipartite multigraph with at most `max_vertices`
/// vertices: a random spanning tree across the sides plus extra edges.
inline zuklab::WeightedMultigraph random_bipartite(std::mt19937_64& rng, std::size_t max_vertices,
                                                   std::uint64_t max_mult) {
  std::uniform_int_distribution<std::size_t> side(1, max_vertices / 2);
  const std::size_t a = side(rng);
  std::size_t b = side(rng);
  if (a + b < 3) b = 2;
  std::vector<std::size_t> order(a + b);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  // Vertices < a are on the left. Attach each vertex in `order` to an earlier
  // vertex on the other side, starting from one of each side.
  std::vector<std::size_t> left, right;
  std::vector<zuklab::Edge> edges;
  std::uniform_int_distribution<std::uint64_t> mult(1, max_mult);
  auto pick = [&rng](const std::vector<std::size_t>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  left.push_back(0);
  right.push_back(a);
  edges.push_back({0, a, mult(rng)});
  for (std::size_t v : order) {
    if (v == 0 || v == a) continue;
    if (v < a) {
      edges.push_back({v, pick(right), mult(rng)});
      left.push_back(v);
    } else {
      edges.push_back({pick(left), v, mult(rng)});
      right.push_back(v);
    }
  }
  std::uniform_int_distribution<std::size_t> extra(0, a * b);
  for (std::size_t i = extra(rng); i > 0; --i) {
    edges.push_back({pick(left), pick(right), mult(rng)});
  }
  return zuklab::WeightedMultigraph::build(a + b, edges);
}

/// Every reduced word of length t over {+-1..+-k} whose first and last letters
/// are positive, in lexicographic order with letters ranked 1..k, -1..-k.
inline std::vector<std::vector<int>> enumerate_wprime(int k, int t) {
  std::vector<int> letters;
  for (int i = 1; i <= k; ++i) letters.push_back(i);
  for (int i = 1; i <= k; ++i) letters.push_back(-i);
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(t), 0);
  while (true) {
    std::vector<int> w;
    for (std::size_t d : digits) w.push_back(letters[d]);
    bool ok = w.front() > 0 && w.back() > 0;
    for (std::size_t i = 1; ok && i < w.size(); ++i) ok = w[i] != -w[i - 1];
    if (ok) out.push_back(w);
    std::size_t pos = digits.size();
    while (pos > 0 && ++digits[pos - 1] == letters.size()) digits[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

}  // namespace oracle
