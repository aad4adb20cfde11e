// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zuklab/certify.hpp"
#include "zuklab/cli.hpp"
#include "zuklab/complex.hpp"
#include "zuklab/harness.hpp"
#include "zuklab/link.hpp"
#include "zuklab/presentation.hpp"
#include "zuklab/spectral.hpp"
#include "zuklab/words.hpp"
#include "zuklab/zuk.hpp"

using namespace zuklab;

namespace {

constexpr double kSpectralTol = 1e-8;
constexpr double kCosTol = 1e-8;
constexpr double kCompleteLinkTol = 1e-9;
constexpr double kPmaxTarget = 4.69;
constexpr double kPmaxTol = 0.01;
constexpr double kRoundTripTol = 1e-9;
constexpr double kBaseTol = 1e-12;
constexpr double kDecayTol = 1e-12;
constexpr std::size_t kDecayIterations = 5;
constexpr double kLimitTol = 1e-8;
constexpr double kSlopeTarget = -0.2;
constexpr double kSlopeTol = 0.1;
constexpr double kConnectedMin = 0.95;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void fold(Outcome& o, bool ok, const std::string& part) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += part + (ok ? "" : " [failed]");
}

double spectrum_error(const std::vector<double>& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return INFINITY;
  double err = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - want[i]));
  return err;
}

Outcome spectral_oracle() {
  Clock clock;
  double err = 0.0;
  double bip_err = 0.0;
  auto record = [&](const WeightedMultigraph& g, const std::vector<double>& want) {
    const auto r = random_walk_spectrum(g, SolverMode::dense);
    err = std::max(err, spectrum_error(r.spectrum, want));
    bip_err = std::max(bip_err, r.lambda_bipartite ? std::abs(*r.lambda_bipartite - r.lambda2) : INFINITY);
  };
  for (std::size_t n = 2; n <= 5; ++n) record(complete_bipartite(n, n), oracle::complete_bipartite_spectrum(n));
  for (std::size_t n = 2; n <= 12; ++n) record(cycle_graph(2 * n), oracle::cycle_spectrum(2 * n));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const auto g = oracle::random_bipartite(rng, 30, 3);
    record(g, oracle::walk_eigenvalues(g));
    const auto r = random_walk_spectrum(g, SolverMode::dense);
    bip_err = std::max(bip_err, std::abs(lambda_bipartite_direct(g) - r.lambda2));
  }
  // K_{1,1}: lambda2 = -1, lambda_bipartite = 0.
  const auto k11 = random_walk_spectrum(complete_bipartite(1, 1), SolverMode::dense);
  const double k11_err = k11.lambda_bipartite ? std::abs(*k11.lambda_bipartite) : INFINITY;
  Outcome o;
  fold(o, err <= kSpectralTol, "max spectrum error " + num(err));
  fold(o, bip_err <= kSpectralTol, "max |lambda_bip - lambda2| " + num(bip_err));
  fold(o, k11_err <= kSpectralTol, "K_{1,1} lambda_bip " + num(k11_err));
  fold(o, clock.seconds() < 10.0, "runtime " + num(clock.seconds()) + " s (< 10)");
  return o;
}

Outcome cos_equals_lambda() {
  Clock clock;
  const auto r = verify_cos_equals_lambda({}, 100, 1);
  double worst = 0.0;
  for (const auto& t : r.trials) worst = std::max(worst, std::abs(t.measured - t.bound));
  Outcome o;
  fold(o, r.evaluated == 100 && r.fraction_holding == 1.0,
       std::to_string(r.evaluated) + " graphs, fraction " + num(r.fraction_holding));
  fold(o, worst <= kCosTol, "max |cos - lambda| " + num(worst));
  fold(o, clock.seconds() < 60.0, "runtime " + num(clock.seconds()) + " s (< 60)");
  return o;
}

Outcome word_combinatorics() {
  Clock clock;
  Outcome o;
  const auto brute = oracle::enumerate_wprime(2, 4);
  fold(o, count_wprime(2, 4) == 36 && brute.size() == 36,
       "count_wprime(2,4) = " + std::to_string(count_wprime(2, 4)) + ", enumerated " +
           std::to_string(brute.size()));
  bool round_trip = true;
  std::size_t checked = 0;
  for (int k = 2; k <= 3; ++k) {
    const WPrimeTable table(k, 6);
    for (int t = 1; t <= 6; ++t) {
      const auto all = oracle::enumerate_wprime(k, t);
      round_trip = round_trip && table.count(t) == all.size();
      for (std::uint64_t i = 0; i < all.size(); ++i) {
        const Word w = table.unrank(t, i);
        round_trip = round_trip && w == all[i] && table.rank(w) == i;
        ++checked;
      }
    }
  }
  fold(o, round_trip, "unrank/rank round trip on " + std::to_string(checked) + " words");
  bool decomposes = true;
  std::size_t relators = 0;
  const int ls[] = {6, 9, 12};
  for (int k = 2; k <= 3; ++k) {
    for (int l : ls) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (const Word& w : sample_bprime(k, l, 0.02, seed).relators) {
          ++relators;
          for (int part = 0; part < 3; ++part) {
            const Word f(w.begin() + part * l / 3, w.begin() + (part + 1) * l / 3);
            decomposes = decomposes && is_reduced(f) && f.front() > 0 && f.back() > 0;
          }
          decomposes = decomposes && is_cyclically_reduced(w);
        }
      }
    }
  }
  fold(o, decomposes && relators > 0, std::to_string(relators) + " B' relators split into W' factors");
  fold(o, clock.seconds() < 10.0, "runtime " + num(clock.seconds()) + " s (< 10)");
  return o;
}

Outcome link_construction() {
  Outcome o;
  bool identity = true;
  std::mt19937_64 pick(77);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(2, 60)(pick);
    const double rho = std::uniform_real_distribution<double>(0.0, 0.05)(pick);
    const auto p = sample_mplus(m, rho, seed);
    identity = identity && build_link(p).full.total_multiplicity() == 3 * p.relators.size();
  }
  fold(o, identity, "3 |relators| identity on 1000 samples");

  // Relator s_i s_j s_k with (i, j, k) = (2, 5, 3) on m = 6.
  const std::size_t m = 6;
  const auto single = build_link(Presentation{6, true, {{2, 5, 3}}});
  const auto s = [m](int i) { return link_vertex(m, i, false); };
  const auto inv = [m](int i) { return link_vertex(m, i, true); };
  const bool three = single.full.edges().size() == 3 && single.full.multiplicity(s(5), inv(2)) == 1 &&
                     single.full.multiplicity(s(3), inv(5)) == 1 &&
                     single.full.multiplicity(s(2), inv(3)) == 1;
  fold(o, three, "single relator gives {s_j,s_i^-1}, {s_k,s_j^-1}, {s_i,s_k^-1}");

  const auto r = random_walk_spectrum(build_link(sample_mplus(5, 1.0, 1)).full);
  const double lb = r.lambda_bipartite ? std::abs(*r.lambda_bipartite) : INFINITY;
  fold(o, lb <= kCompleteLinkTol, "rho = 1 link lambda_bip " + num(lb));
  return o;
}

Outcome lemma_suites() {
  Outcome o;
  const auto u = verify_union_lemma({}, 100, 1);
  fold(o, u.evaluated > 0 && u.fraction_holding == 1.0,
       "union: " + std::to_string(u.evaluated) + " evaluated, " + std::to_string(u.skipped) +
           " skipped, fraction " + num(u.fraction_holding));
  const auto d = verify_deletion_lemma({}, 100, 1);
  fold(o, d.evaluated > 0 && d.fraction_holding == 1.0,
       "deletion: " + std::to_string(d.evaluated) + " evaluated, " + std::to_string(d.skipped) +
           " skipped, fraction " + num(d.fraction_holding));
  return o;
}

Outcome er_gap() {
  Clock clock;
  const auto r = verify_er_spectral(500, 0.3, 100, 1);
  std::size_t holding = 0;
  double margin = INFINITY;
  for (const auto& t : r.trials) {
    holding += t.holds;
    margin = std::min(margin, t.margin);
  }
  Outcome o;
  fold(o, holding >= 99, std::to_string(holding) + "/100 below 8/sqrt(n rho), min margin " + num(margin));
  fold(o, clock.seconds() < 300.0, "runtime " + num(clock.seconds()) + " s (< 300)");
  return o;
}

Outcome mplus_scaling() {
  Clock clock;
  const std::vector<std::uint64_t> grid{400, 800, 1600, 3200};
  const auto r = verify_mplus_link(grid, 1.6, 1.0, 20, 1);
  Outcome o;
  const auto it = r.summary.find("slope");
  const double slope = it == r.summary.end() ? NAN : it->second;
  fold(o, std::abs(slope - kSlopeTarget) <= kSlopeTol, "slope " + num(slope) + " (target -0.2 +- 0.1)");
  std::size_t connected = 0;
  std::size_t total = 0;
  for (const auto& t : r.trials) {
    if (t.inputs.at("m") < 800.0) continue;
    ++total;
    connected += t.inputs.at("connected") > 0.5;
  }
  const double frac = total ? static_cast<double>(connected) / static_cast<double>(total) : 0.0;
  fold(o, frac >= kConnectedMin, "connected at m >= 800: " + num(frac));
  fold(o, clock.seconds() < 1800.0, "runtime " + num(clock.seconds()) + " s (< 1800)");
  return o;
}

Outcome formula_arithmetic() {
  Outcome o;
  // Independent evaluation in base 2.
  const double independent =
      (300 * (0.4 - 1.0 / 3.0) * std::log2(3.0) - 2.0 * std::log2(20.0 * std::sqrt(2.0))) / std::log2(26.0);
  const auto p = pmax_density(2, 300, 0.4);
  fold(o, p && std::abs(*p - kPmaxTarget) <= kPmaxTol && std::abs(*p - independent) <= kBaseTol,
       "pmax_density(2,300,0.4) = " + (p ? num(*p) : std::string("absent")) + ", independent " +
           num(independent));

  double trip = 0.0;
  double base = 0.0;
  for (int k : {2, 3}) {
    for (int l : {150, 300, 600}) {
      for (double d : {0.36, 0.4, 0.45}) {
        const double m = 0.5 * std::pow(2.0 * k - 1.0, l / 3.0);
        const auto mp = pmax_mplus(3.0 * (1.0 - d), 0.25, m);
        const auto dp = pmax_density(k, l, d);
        if (mp && dp) trip = std::max(trip, std::abs(*mp - *dp));
        const auto dp10 = pmax_density(k, l, d, LogBase::ten);
        if (dp && dp10) base = std::max(base, std::abs(*dp - *dp10));
        const auto mp10 = pmax_mplus(3.0 * (1.0 - d), 0.25, m, LogBase::ten);
        if (mp && mp10) base = std::max(base, std::abs(*mp - *mp10));
      }
    }
  }
  fold(o, trip <= kRoundTripTol, "round trip max |pmax_mplus - pmax_density| " + num(trip));
  fold(o, base <= kBaseTol, "log base difference " + num(base));
  return o;
}

Outcome zuk_engine() {
  Outcome o;
  const auto x = complete_partite_complex({2, 2, 2});
  const ZukVerdict v = zuk_verdict(x);
  const bool zero = v.max_link_lambda && std::abs(*v.max_link_lambda) < kDecayTol;
  fold(o, v.verdict == Verdict::pass && zero, "K_{2,2,2} verdict " + to_string(v.verdict));
  const LimitResult lim = iterate_to_limit(x);
  const auto& it = lim.report.iterates;
  const double at = it.size() > kDecayIterations ? it[kDecayIterations] : 0.0;
  fold(o, at < kDecayTol, "||T^5 - T^inf|| = " + num(at) + " (below 1e-12 required)");

  const auto r = verify_angle_convergence({}, 50, 1);
  fold(o, r.evaluated == 50 && r.fraction_holding == 1.0,
       std::to_string(r.evaluated) + " gated complexes, fraction converging " + num(r.fraction_holding) +
           " (limit tol " + num(kLimitTol) + ")");
  return o;
}

std::string payload_hash(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  const std::string text = out.str();
  if (!text.empty() && text[0] == '{') return Json::parse(text).at("payload_sha256").get<std::string>();
  const std::string key = "# payload_sha256: ";
  const auto pos = text.find(key);
  if (pos == std::string::npos) return "";
  return text.substr(pos + key.size(), 64);
}

Outcome reproducibility() {
  const std::vector<std::vector<std::string>> commands{
      {"sample", "--model", "density", "--k", "2", "--l", "9", "--d", "0.4", "--seed", "3"},
      {"sample", "--model", "binomial", "--k", "2", "--l", "9", "--rho", "0.01", "--seed", "3"},
      {"sample", "--model", "bprime", "--k", "2", "--l", "9", "--rho", "0.05", "--seed", "3"},
      {"sample", "--model", "mplus", "--m", "40", "--alpha", "1.6", "--seed", "3"},
      {"link", "--model", "mplus", "--m", "40", "--alpha", "1.6", "--seed", "3"},
      {"spectrum", "--model", "mplus", "--m", "40", "--alpha", "1.6", "--seed", "3"},
      {"certify", "--model", "mplus", "--m", "40", "--alpha", "1.6", "--seed", "3"},
      {"certify", "--emit-bounds", "--k", "2", "--l", "300", "--d", "0.4"},
      {"verify", "--lemma", "union", "--trials", "4", "--seed", "3"},
      {"verify", "--lemma", "deletion", "--trials", "4", "--seed", "3"},
      {"verify", "--lemma", "er", "--n", "150", "--trials", "4", "--seed", "3"},
      {"verify", "--lemma", "degree", "--n", "300", "--trials", "4", "--seed", "3"},
      {"verify", "--lemma", "cos", "--trials", "8", "--seed", "3"},
      {"verify", "--lemma", "mplus-link", "--m", "100,200", "--trials", "3", "--seed", "3"},
      {"verify", "--lemma", "angle", "--trials", "3", "--seed", "3"},
      {"sweep", "--model", "mplus", "--m", "100,200", "--trials", "3", "--seed", "3"},
      {"sweep", "--model", "density", "--k", "2", "--d", "0.4", "--l-grid", "9,12", "--trials", "2"},
  };
  std::size_t identical = 0;
  std::string mismatch;
  for (const auto& base : commands) {
    std::vector<std::string> hashes;
    for (const char* threads : {"1", "4", "1", "4"}) {
      auto args = base;
      args.push_back("--threads");
      args.push_back(threads);
      hashes.push_back(payload_hash(args));
    }
    const bool same = !hashes[0].empty() &&
                      std::all_of(hashes.begin(), hashes.end(), [&](const std::string& h) { return h == hashes[0]; });
    if (same) {
      ++identical;
    } else if (mismatch.empty()) {
      mismatch = base[0] + " " + base[1] + " " + base[2];
    }
  }
  Outcome o;
  fold(o, identical == commands.size(),
       std::to_string(identical) + "/" + std::to_string(commands.size()) +
           " commands byte-identical across reruns and threads {1,4}" +
           (mismatch.empty() ? "" : ", first mismatch: " + mismatch));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"spectral oracle", spectral_oracle},
      {"cos angle equals lambda_bipartite", cos_equals_lambda},
      {"word combinatorics", word_combinatorics},
      {"link construction", link_construction},
      {"deterministic lemma suites", lemma_suites},
      {"ER spectral gap", er_gap},
      {"M+ link scaling", mplus_scaling},
      {"formula arithmetic", formula_arithmetic},
      {"Zuk engine", zuk_engine},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
