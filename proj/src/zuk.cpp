#include "zuklab/zuk.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "zuklab/linalg.hpp"
#include "zuklab/spectral.hpp"

namespace zuklab {

double CochainField::norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

namespace {

std::vector<TypeSet> codimension_one_types(int n) {
  const TypeSet all = (1u << (n + 1)) - 1;
  std::vector<TypeSet> out;
  for (int t = 0; t <= n; ++t) out.push_back(all & ~(1u << t));
  return out;
}

void check_field(const PartiteComplex& x, const CochainField& phi) {
  if (phi.values.size() != x.cell_count()) {
    throw InvalidInput("cochain has " + std::to_string(phi.values.size()) + " values for " +
                       std::to_string(x.cell_count()) + " cells");
  }
}

}  // namespace

NuRelation nu_relation(const PartiteComplex& x, TypeSet nu) {
  const int n = x.dimension();
  const int size = type_count(nu);
  if ((nu >> (n + 1)) != 0 || (size != n && size != n - 1) || size == 0) {
    throw InvalidInput("nu must be a set of n or n-1 types within 0..n");
  }
  NuRelation rel;
  rel.nu = nu;
  rel.class_of.resize(x.cell_count());
  std::map<Simplex, std::size_t> index;
  const auto& types = x.vertex_types();
  for (std::size_t c = 0; c < x.cell_count(); ++c) {
    Simplex face;
    for (std::size_t v : x.cells()[c]) {
      if (nu & (1u << types[v])) face.push_back(v);
    }
    auto [it, inserted] = index.emplace(std::move(face), rel.classes.size());
    if (inserted) rel.classes.emplace_back();
    rel.classes[it->second].push_back(c);
    rel.class_of[c] = it->second;
  }
  return rel;
}

CochainField project_nu(const PartiteComplex& x, TypeSet nu, const CochainField& phi) {
  check_field(x, phi);
  const NuRelation rel = nu_relation(x, nu);
  CochainField out{std::vector<double>(phi.values.size())};
  for (const auto& cls : rel.classes) {
    double mean = 0.0;
    for (std::size_t c : cls) mean += phi.values[c];
    mean /= static_cast<double>(cls.size());
    for (std::size_t c : cls) out.values[c] = mean;
  }
  return out;
}

Eigen::MatrixXd projection_matrix(const PartiteComplex& x, TypeSet nu) {
  const NuRelation rel = nu_relation(x, nu);
  const auto n = static_cast<Eigen::Index>(x.cell_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (const auto& cls : rel.classes) {
    const double w = 1.0 / static_cast<double>(cls.size());
    for (std::size_t a : cls) {
      for (std::size_t b : cls) p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = w;
    }
  }
  return p;
}

CochainField t_operator(const PartiteComplex& x, const CochainField& phi) {
  check_field(x, phi);
  const int n = x.dimension();
  if (n < 1) throw InvalidInput("T needs n >= 1");
  CochainField out{std::vector<double>(phi.values.size(), 0.0)};
  const auto nus = codimension_one_types(n);
  for (TypeSet nu : nus) {
    const CochainField p = project_nu(x, nu, phi);
    for (std::size_t i = 0; i < p.values.size(); ++i) out.values[i] += p.values[i];
  }
  for (double& v : out.values) v /= static_cast<double>(nus.size());
  return out;
}

Eigen::MatrixXd t_matrix(const PartiteComplex& x) {
  const int n = x.dimension();
  if (n < 1) throw InvalidInput("T needs n >= 1");
  const auto size = static_cast<Eigen::Index>(x.cell_count());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
  const auto nus = codimension_one_types(n);
  for (TypeSet nu : nus) t += projection_matrix(x, nu);
  return t / static_cast<double>(nus.size());
}

void fit_geometric(const std::vector<double>& values, std::size_t first, double& rate,
                   double& constant) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = first; i < values.size(); ++i) {
    if (values[i] > 0.0) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log(values[i]));
    }
  }
  if (xs.empty()) {
    rate = 0.0;
    constant = 0.0;
    return;
  }
  if (xs.size() == 1) {
    // A single positive point: the sequence dropped to zero right after it.
    rate = 0.0;
    constant = std::exp(ys[0]);
    return;
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  rate = std::exp(slope);
  constant = std::exp(intercept);
}

LimitResult iterate_to_limit(const PartiteComplex& x, double tol, std::size_t max_iterations) {
  if (tol <= 0.0) throw InvalidInput("tolerance must be positive");
  const Eigen::MatrixXd t = t_matrix(x);
  const auto size = t.rows();
  const Eigen::MatrixXd averaging =
      Eigen::MatrixXd::Constant(size, size, 1.0 / static_cast<double>(size));

  ConvergenceReport report;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(size, size);
  report.iterates.push_back(operator_norm(power - averaging));
  bool settled = size <= 1;
  for (std::size_t i = 0; !settled && i < max_iterations; ++i) {
    Eigen::MatrixXd next = t * power;
    // T and its powers are symmetric; drop the rounding asymmetry.
    next = (0.5 * (next + next.transpose())).eval();
    const double step = operator_norm(next - power);
    power = std::move(next);
    report.iterates.push_back(operator_norm(power - averaging));
    settled = step < tol;
  }
  fit_geometric(report.iterates, report.iterates.size() / 2, report.fitted_rate,
                report.fitted_constant);
  if (!settled) {
    throw LimitError("T^i did not converge within " + std::to_string(max_iterations) +
                         " iterations",
                     std::move(report));
  }
  if (operator_norm(power - averaging) > 1e-6) {
    throw LimitError("limit not rank-one (gallery disconnected)", std::move(report));
  }
  return {std::move(power), std::move(report)};
}

double cos_angle(const PartiteComplex& x, TypeSet nu1, TypeSet nu2) {
  const int n = x.dimension();
  if (type_count(nu1) != n || type_count(nu2) != n || nu1 == nu2) {
    throw InvalidInput("cos_angle needs two distinct type sets of size n");
  }
  const Eigen::MatrixXd p1 = projection_matrix(x, nu1);
  const Eigen::MatrixXd p2 = projection_matrix(x, nu2);
  const Eigen::MatrixXd p12 = projection_matrix(x, nu1 & nu2);
  return std::max(operator_norm(p1 * p2 - p12), operator_norm(p2 * p1 - p12));
}

double max_pairwise_cos_angle(const PartiteComplex& x) {
  const auto nus = codimension_one_types(x.dimension());
  double best = 0.0;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    for (std::size_t j = i + 1; j < nus.size(); ++j) {
      best = std::max(best, cos_angle(x, nus[i], nus[j]));
    }
  }
  return best;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::vacuous: return "VACUOUS";
  }
  return "FAIL";
}

double zuk_threshold(int n) {
  if (n < 2) throw InvalidInput("the criterion threshold needs n >= 2");
  return 1.0 / (8.0 * n - 3.0);
}

ZukVerdict zuk_verdict(const PartiteComplex& x) {
  ZukVerdict out;
  const int n = x.dimension();
  out.threshold = zuk_threshold(n);
  out.gallery_connected = is_gallery_connected(x);
  out.links_connected = true;

  double worst = 0.0;
  for (const Simplex& tau : x.faces(n - 2)) {
    const Link l = link(x, tau);
    ++out.links_checked;
    const SpectralReport spec = random_walk_spectrum(l.graph);
    if (!spec.is_connected || !spec.lambda_bipartite) {
      out.links_connected = false;
      continue;
    }
    worst = std::max(worst, *spec.lambda_bipartite);
  }
  if (out.links_checked == 0) {
    out.reason = "empty complex";
    return out;
  }
  if (!out.links_connected) {
    out.reason = "link disconnected";
    return out;
  }
  out.max_link_lambda = worst;
  out.slack = out.threshold - worst;
  if (!out.gallery_connected) {
    out.reason = "gallery disconnected";
    return out;
  }
  if (worst < out.threshold) {
    out.verdict = Verdict::pass;
    out.reason = "max link lambda below threshold";
  } else {
    out.reason = "max link lambda at or above threshold";
  }
  return out;
}

bool admissible(double gamma, double beta, int n) {
  const double k = 8.0 * n - 3.0;
  if (!(gamma < 1.0 / k)) return false;
  return beta < 1.0 + (1.0 - k * gamma) / (n - 1.0 + (3.0 * n - 1.0) * gamma);
}

ZukReport zuk_report(const PartiteComplex& x, std::size_t max_cells) {
  ZukReport out;
  out.verdict = zuk_verdict(x);
  if (x.cell_count() == 0 || x.cell_count() > max_cells || !out.verdict.gallery_connected) {
    return out;
  }
  try {
    out.convergence = iterate_to_limit(x).report;
    out.converged_outside_guaranteed_region = out.verdict.verdict != Verdict::pass;
  } catch (const LimitError&) {
    // Only possible outside the guaranteed region; the verdict already says so.
  }
  return out;
}

}  // namespace zuklab
