#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zuklab/graph.hpp"
#include "zuklab/rng.hpp"

namespace zuklab {

/// Tolerance for "measured <= bound" in every deterministic lemma check.
inline constexpr double kBoundTol = 1e-9;

/// One trial of a lemma check. `holds` is measured <= bound + kBoundTol
/// unless the lemma states its own comparison; skipped trials did not meet
/// the lemma's hypothesis and never count as failures.
struct TrialResult {
  std::size_t trial_index = 0;
  std::map<std::string, double> inputs;
  double measured = 0.0;
  double bound = 0.0;
  bool holds = false;
  bool skipped = false;
  double margin = 0.0;
  std::string note;
};

/**
 * Outcome of a lemma check over many seeded trials.
 *
 * fraction_holding counts holding trials over non-skipped ones; `summary`
 * carries lemma-specific aggregates (per-m means, fitted slopes, flags).
 */
struct HarnessReport {
  std::string lemma;
  std::vector<TrialResult> trials;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  double fraction_holding = 0.0;
  double mean_measured = 0.0;
  double max_measured = 0.0;
  bool vacuous = false;
  std::string hypothesis;
  std::map<std::string, double> summary;
};

/// Fills evaluated/skipped/fraction/mean/max from `trials`.
void finalize_report(HarnessReport& report);

/// Bipartite Erdos-Renyi graph on sides {0..n-1} and {n..2n-1}.
WeightedMultigraph bipartite_er(std::size_t n, double rho, Rng& rng);

/// Connected simple bipartite graph on n + n vertices, pairwise disjoint from
/// `avoid`, with every degree in [ceil(d(1-eps)), floor(d(1+eps))].
/// Throws after 100 failed attempts.
WeightedMultigraph near_regular_bipartite(std::size_t n, double degree, double eps,
                                          const std::vector<WeightedMultigraph>& avoid, Rng& rng);

struct UnionParams {
  std::size_t vertex_count = 200;  // split evenly into the two sides
  std::size_t k_graphs = 3;
  double eps = 0.2;
  double degree = 10.0;
};

/// lambda2(union) <= max_i lambda2(G_i) + 16 eps^2 / (1 - eps)^4.
HarnessReport verify_union_lemma(const UnionParams& params, std::size_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

struct DeletionParams {
  std::size_t n = 150;        // vertices per side
  double p1 = 0.3;            // density of E1
  double p2 = 0.01;           // density of E2 among non-E1 pairs
  double eps_cap = 0.25;      // largest accepted max_v m2(v)/m1(v)
  std::size_t hub_edges = 0;  // extra E2 edges forced at vertex 0
};

/// lambda2(E1) <= lambda2(E1 u E2) + 4 eps, skipped unless
/// eps < (1 - lambda2(E1 u E2)) / 4.
HarnessReport verify_deletion_lemma(const DeletionParams& params, std::size_t trials,
                                    std::uint64_t seed, unsigned threads = 1);

/// lambda2 of G_bipartite(n, rho) against 8 / sqrt(n rho).
HarnessReport verify_er_spectral(std::size_t n, double rho, std::size_t trials, std::uint64_t seed,
                                 unsigned threads = 1);

/// Per trial: no vertex of G_bipartite(n, rho) has |m(v) - n rho| >=
/// n rho / n^{(1-alpha)/3}.
HarnessReport verify_degree_concentration(std::size_t n, double rho, double alpha,
                                          std::size_t trials, std::uint64_t seed,
                                          unsigned threads = 1);

struct CosParams {
  std::size_t max_vertices = 30;
  std::uint64_t max_multiplicity = 3;
};

/// cos of the angle between the side projections on l2(E) against
/// lambda_bipartite; holds iff they agree to 1e-8.
HarnessReport verify_cos_equals_lambda(const CosParams& params, std::size_t trials,
                                       std::uint64_t seed, unsigned threads = 1);

/// The cos side of the check for a single graph, by dense SVD on l2(E).
double edge_space_cos(const WeightedMultigraph& g);

/// M+ links with rho = C / m^alpha against 10 / (sqrt(C) m^{1-alpha/2}).
/// Summary holds per-m mean lambda2 and connectivity plus the fitted slope of
/// log mean lambda2 against log m.
HarnessReport verify_mplus_link(const std::vector<std::uint64_t>& m_grid, double alpha, double C,
                                std::size_t trials_per_m, std::uint64_t seed,
                                unsigned threads = 1);

struct AngleParams {
  std::size_t min_part = 2;
  std::size_t max_part = 5;
  double q = 0.99;
  std::size_t max_attempts = 2000;
};

/// Random partite 2-complexes with connected links and gallery. Trials with
/// gamma < 1/13 must converge with fitted rate < 1 to the averaging matrix;
/// the rest are skipped. Runs until `trials` gated complexes are found or
/// max_attempts is used up.
HarnessReport verify_angle_convergence(const AngleParams& params, std::size_t trials,
                                       std::uint64_t seed, unsigned threads = 1);

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace zuklab
