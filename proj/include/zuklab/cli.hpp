#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zuklab/json_io.hpp"

namespace zuklab {

/// Every flag of every subcommand; unset optional flags are omitted from the
/// serialized form.
struct RunConfig {
  std::string subcommand;
  std::optional<std::string> model;
  int k = 2;
  std::optional<int> l;
  std::optional<double> d;
  std::optional<double> rho;
  std::optional<std::string> m;  // single value or comma-separated grid
  std::optional<double> alpha;
  double C = 1.0;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::optional<double> tol;
  std::optional<std::string> out_path;
  std::optional<std::string> in_path;
  std::optional<std::string> graph_path;
  unsigned threads = 1;
  std::string mode = "automatic";
  std::string part = "full";
  bool emit_bounds = false;
  std::optional<std::string> lemma;
  std::optional<std::size_t> n;
  std::size_t vertices = 200;
  std::size_t k_graphs = 3;
  double eps = 0.2;
  double degree = 10.0;
  double p1 = 0.3;
  double p2 = 0.01;
  double eps_cap = 0.25;
  std::size_t hub_edges = 0;
  std::size_t max_vertices = 30;
  std::uint64_t max_mult = 3;
  std::size_t min_part = 2;
  std::size_t max_part = 5;
  double q = 0.99;
  std::size_t max_attempts = 2000;
  std::optional<std::string> l_grid;
};

Json to_json(const RunConfig& c);

/// One grid point of a sweep over m (or over l through the reduction).
struct SweepRow {
  double x = 0.0;  // m or l
  std::uint64_t m = 0;
  double rho = 0.0;
  double mean_lambda2 = 0.0;
  double bound = 0.0;
  double pass_fraction = 0.0;
  double connected_fraction = 0.0;
};

/// M+ links at rho = C / m^alpha; bound is 10 / (sqrt(C) m^{1-alpha/2}) and a
/// trial passes when its link is connected with lambda below 1/13.
std::vector<SweepRow> sweep_mplus(const std::vector<std::uint64_t>& m_grid, double alpha, double C,
                                  std::size_t trials, std::uint64_t seed, unsigned threads);

/// Same over l, with (m, rho) from reduction_params(k, l, d).
std::vector<SweepRow> sweep_density(int k, double d, const std::vector<int>& l_grid,
                                    std::size_t trials, std::uint64_t seed, unsigned threads);

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 success or PASS, 1 negative verdict, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zuklab
