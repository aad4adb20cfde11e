#include "zuklab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "zuklab/error.hpp"
#include "zuklab/graph_io.hpp"
#include "zuklab/link.hpp"
#include "zuklab/parallel.hpp"

namespace zuklab {

namespace {

/// Raised for flag combinations CLI11 cannot express; exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream one(item);
    T value{};
    if (!(one >> value) || !(one >> std::ws).eof()) {
      throw UsageError(std::string("bad value '") + item + "' for " + flag);
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + flag);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Accepts both a bare presentation and an envelope written by `sample`.
Presentation read_presentation(const std::string& path) {
  const Json j = read_json_file(path);
  return presentation_from_json(j.contains("payload") ? j.at("payload") : j);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path) {
    std::ofstream file(*cfg.out_path);
    if (!file) throw InvalidInput("cannot write '" + *cfg.out_path + "'");
    file << text;
  } else {
    out << text;
  }
}

void emit_json(const RunConfig& cfg, const Json& payload, std::ostream& out) {
  emit(cfg, envelope(to_json(cfg), payload).dump(2) + "\n", out);
}

ModelParams model_params(const RunConfig& cfg) {
  if (!cfg.model) throw UsageError("--model is required");
  ModelParams p;
  p.model = model_from_string(*cfg.model);
  p.k = cfg.k;
  p.seed = cfg.seed;
  p.C = cfg.C;
  auto need = [](bool present, const char* flag, const std::string& model) {
    if (!present) throw UsageError(std::string(flag) + " is required for --model " + model);
  };
  switch (p.model) {
    case Model::density:
      need(cfg.l.has_value(), "--l", *cfg.model);
      need(cfg.d.has_value(), "--d", *cfg.model);
      p.l = *cfg.l;
      p.d = *cfg.d;
      break;
    case Model::binomial:
    case Model::bprime:
      need(cfg.l.has_value(), "--l", *cfg.model);
      need(cfg.rho.has_value(), "--rho", *cfg.model);
      p.l = *cfg.l;
      p.rho = *cfg.rho;
      break;
    case Model::mplus:
      need(cfg.m.has_value(), "--m", *cfg.model);
      need(cfg.rho.has_value() || cfg.alpha.has_value(), "--rho or --alpha", *cfg.model);
      p.m = parse_list<std::uint64_t>(*cfg.m, "--m").at(0);
      if (cfg.alpha) {
        p.alpha = cfg.alpha;
      } else {
        p.rho = *cfg.rho;
      }
      break;
  }
  return p;
}

/// The presentation a link/spectrum/certify run works on: --in, or sampled
/// from the model flags.
Presentation input_presentation(const RunConfig& cfg, std::optional<ModelParams>& params) {
  if (cfg.in_path) return read_presentation(*cfg.in_path);
  RunConfig sampling = cfg;
  if (!sampling.model) sampling.model = "mplus";
  params = model_params(sampling);
  if (params->model != Model::mplus) throw UsageError("only --model mplus has a link");
  return sample(*params);
}

Json graph_json(const WeightedMultigraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.mult});
  return Json{{"vertex_count", g.vertex_count()}, {"labels", g.labels()}, {"edges", edges}};
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const ModelParams params = model_params(cfg);
  const Presentation p = sample(params);
  emit_json(cfg, to_json(p), out);
  if (cfg.out_path) out << "wrote " << p.relators.size() << " relators to " << *cfg.out_path << "\n";
  return 0;
}

int cmd_link(const RunConfig& cfg, std::ostream& out) {
  std::optional<ModelParams> params;
  const Presentation p = input_presentation(cfg, params);
  const LinkDecomposition link = build_link(p);
  const WeightedMultigraph* g = &link.full;
  if (cfg.part == "L1") g = &link.L1;
  else if (cfg.part == "L2") g = &link.L2;
  else if (cfg.part == "L3") g = &link.L3;
  else if (cfg.part != "full") throw UsageError("--part must be full, L1, L2 or L3");
  Json payload{{"part", cfg.part},
               {"relators", p.relators.size()},
               {"isolated", link.isolated},
               {"graph", graph_json(*g)}};
  emit_json(cfg, payload, out);
  if (cfg.out_path) {
    out << cfg.part << ": " << g->vertex_count() << " vertices, " << g->edges().size()
        << " edges, total multiplicity " << g->total_multiplicity() << "\n";
  }
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  WeightedMultigraph g;
  if (cfg.graph_path) {
    g = from_edge_list(slurp(*cfg.graph_path));
  } else {
    std::optional<ModelParams> params;
    g = build_link(input_presentation(cfg, params)).full;
  }
  const SpectralReport r = random_walk_spectrum(g, solver_mode_from_string(cfg.mode), cfg.tol);
  emit_json(cfg, to_json(r), out);
  if (cfg.out_path) {
    out << "lambda2 = " << fixed(r.lambda2) << ", connected = " << (r.is_connected ? "yes" : "no")
        << "\n";
  }
  return 0;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostream& log = cfg.out_path ? out : err;
  Certificate cert;
  if (cfg.emit_bounds) {
    if (!cfg.l || !cfg.d) throw UsageError("--emit-bounds needs --k, --l and --d");
    cert = density_bounds_certificate(cfg.k, *cfg.l, *cfg.d);
    ModelParams p;
    p.model = Model::density;
    p.k = cfg.k;
    p.l = *cfg.l;
    p.d = *cfg.d;
    p.seed = cfg.seed;
    cert.params = p;
    log << "p_max = " << (cert.p_max ? fixed(*cert.p_max) : std::string("absent")) << "\n"
        << "confdim lower = "
        << (cert.confdim_lower ? fixed(*cert.confdim_lower) : std::string("absent"))
        << ", upper = " << fixed(cert.confdim_upper.value_or(0.0)) << "\n";
  } else {
    std::optional<ModelParams> params;
    const Presentation p = input_presentation(cfg, params);
    cert = certify_presentation(p, 2, solver_mode_from_string(cfg.mode), cfg.tol);
    cert.params = params;
    log << "lambda = "
        << (cert.lambda_measured ? fixed(*cert.lambda_measured) : std::string("absent"))
        << ", threshold = " << fixed(cert.threshold) << "\n";
  }
  log << to_string(cert.verdict) << ": " << cert.reason << "\n";
  emit_json(cfg, to_json(cert), out);
  return cert.verdict == Verdict::pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostream& log = cfg.out_path ? out : err;
  if (!cfg.lemma) throw UsageError("--lemma is required");
  const std::string& lemma = *cfg.lemma;
  HarnessReport report;
  if (lemma == "union") {
    report = verify_union_lemma({cfg.vertices, cfg.k_graphs, cfg.eps, cfg.degree}, cfg.trials,
                                cfg.seed, cfg.threads);
  } else if (lemma == "deletion") {
    report = verify_deletion_lemma({cfg.n.value_or(150), cfg.p1, cfg.p2, cfg.eps_cap, cfg.hub_edges},
                                   cfg.trials, cfg.seed, cfg.threads);
  } else if (lemma == "er") {
    report = verify_er_spectral(cfg.n.value_or(500), cfg.rho.value_or(0.3), cfg.trials, cfg.seed,
                                cfg.threads);
  } else if (lemma == "degree") {
    const std::size_t n = cfg.n.value_or(2000);
    const double alpha = cfg.alpha.value_or(0.5);
    const double rho = cfg.rho ? *cfg.rho : cfg.C / std::pow(static_cast<double>(n), alpha);
    report = verify_degree_concentration(n, rho, alpha, cfg.trials, cfg.seed, cfg.threads);
  } else if (lemma == "cos") {
    report = verify_cos_equals_lambda({cfg.max_vertices, cfg.max_mult}, cfg.trials, cfg.seed,
                                      cfg.threads);
  } else if (lemma == "mplus-link") {
    const auto grid = parse_list<std::uint64_t>(cfg.m.value_or("400,800,1600,3200"), "--m");
    report = verify_mplus_link(grid, cfg.alpha.value_or(1.6), cfg.C, cfg.trials, cfg.seed,
                               cfg.threads);
  } else if (lemma == "angle") {
    report = verify_angle_convergence({cfg.min_part, cfg.max_part, cfg.q, cfg.max_attempts},
                                      cfg.trials, cfg.seed, cfg.threads);
  } else {
    throw UsageError("unknown lemma '" + lemma +
                     "' (expected union, deletion, er, degree, cos, mplus-link, angle)");
  }
  log << report.lemma << ": fraction_holding = " << fixed(report.fraction_holding) << " over "
      << report.evaluated << " trials, " << report.skipped << " skipped"
      << (report.vacuous ? ", VACUOUS" : "") << "\n";
  for (const auto& [key, value] : report.summary) log << "  " << key << " = " << fixed(value) << "\n";
  emit_json(cfg, to_json(report), out);
  const bool verified = !report.vacuous && report.evaluated > 0 && report.fraction_holding == 1.0;
  return verified ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::string model = cfg.model.value_or("mplus");
  std::vector<SweepRow> rows;
  std::string x_name;
  double slope_theory = 0.0;
  if (model == "mplus") {
    if (!cfg.m) throw UsageError("--m grid is required for the mplus sweep");
    const double alpha = cfg.alpha.value_or(1.6);
    rows = sweep_mplus(parse_list<std::uint64_t>(*cfg.m, "--m"), alpha, cfg.C, cfg.trials, cfg.seed,
                       cfg.threads);
    x_name = "m";
    slope_theory = -(1.0 - alpha / 2.0);
  } else if (model == "density") {
    if (!cfg.d || !cfg.l_grid) throw UsageError("--d and --l grid are required for the density sweep");
    rows = sweep_density(cfg.k, *cfg.d, parse_list<int>(*cfg.l_grid, "--l"), cfg.trials, cfg.seed,
                         cfg.threads);
    x_name = "l";
    slope_theory = -(1.0 - 3.0 * (1.0 - *cfg.d) / 2.0);
  } else {
    throw UsageError("sweep supports --model mplus or density");
  }

  std::ostringstream body;
  const bool by_l = x_name == "l";
  body << (by_l ? "l," : "") << "m,rho,mean_lambda2,bound,pass_fraction,connected_fraction\n";
  std::vector<double> log_m, log_lambda;
  for (const SweepRow& r : rows) {
    if (by_l) body << fixed(r.x) << ',';
    body << r.m << ',' << fixed(r.rho) << ',' << fixed(r.mean_lambda2) << ','
         << fixed(r.bound) << ',' << fixed(r.pass_fraction) << ',' << fixed(r.connected_fraction)
         << "\n";
    if (r.connected_fraction > 0.0 && r.mean_lambda2 > 0.0) {
      log_m.push_back(std::log(static_cast<double>(r.m)));
      log_lambda.push_back(std::log(r.mean_lambda2));
    }
  }
  if (log_m.size() >= 2) {
    body << "# slope of log mean_lambda2 vs log m: " << fixed(fit_slope(log_m, log_lambda))
         << " (theory " << fixed(slope_theory) << ")\n";
  }
  const std::string payload = body.str();
  std::ostringstream csv;
  csv << "# tool: " << kToolName << " " << kToolVersion << "\n"
      << "# config: " << to_json(cfg).dump() << "\n"
      << "# payload_sha256: " << sha256_hex(payload) << "\n"
      << payload;
  emit(cfg, csv.str(), out);
  if (cfg.out_path) out << "wrote " << rows.size() << " rows to " << *cfg.out_path << "\n";
  return 0;
}

SweepRow sweep_point(double x, std::uint64_t m, double rho, double bound,
                     const std::vector<std::pair<bool, double>>& trials) {
  SweepRow row;
  row.x = x;
  row.m = m;
  row.rho = rho;
  row.bound = bound;
  std::size_t connected = 0;
  std::size_t pass = 0;
  double sum = 0.0;
  for (const auto& [ok, lambda] : trials) {
    if (!ok) continue;
    ++connected;
    sum += lambda;
    pass += lambda < zuk_threshold(2);
  }
  const auto n = static_cast<double>(trials.size());
  row.mean_lambda2 = connected ? sum / static_cast<double>(connected) : 1.0;
  row.pass_fraction = trials.empty() ? 0.0 : static_cast<double>(pass) / n;
  row.connected_fraction = trials.empty() ? 0.0 : static_cast<double>(connected) / n;
  return row;
}

/// (connected, lambda2) of the link of an M+ sample for each (point, trial).
std::vector<std::pair<bool, double>> link_trials(const std::vector<std::pair<std::uint64_t, double>>& points,
                                                 std::size_t trials, std::uint64_t seed,
                                                 unsigned threads) {
  return run_indexed(points.size() * trials, threads, [&](std::size_t i) {
    const auto [m, rho] = points[i / trials];
    Rng rng = make_stream(seed, i);
    const LinkDecomposition link = build_link(sample_mplus(m, rho, rng));
    if (!link.isolated.empty() || link.full.edges().empty() || !is_connected(link.full)) {
      return std::pair<bool, double>{false, 1.0};
    }
    return std::pair<bool, double>{true, random_walk_spectrum(link.full).lambda2};
  });
}

}  // namespace

Json to_json(const RunConfig& c) {
  Json j{{"subcommand", c.subcommand}};
  auto put = [&j](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("model", c.model);
  j["k"] = c.k;
  put("l", c.l);
  put("l_grid", c.l_grid);
  put("d", c.d);
  put("rho", c.rho);
  put("m", c.m);
  put("alpha", c.alpha);
  j["C"] = c.C;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  put("tol", c.tol);
  put("out", c.out_path);
  put("in", c.in_path);
  put("graph", c.graph_path);
  j["threads"] = c.threads;
  j["mode"] = c.mode;
  if (c.subcommand == "link") j["part"] = c.part;
  if (c.subcommand == "certify") j["emit_bounds"] = c.emit_bounds;
  if (c.subcommand == "verify") {
    put("lemma", c.lemma);
    put("n", c.n);
    j["vertices"] = c.vertices;
    j["k_graphs"] = c.k_graphs;
    j["eps"] = c.eps;
    j["degree"] = c.degree;
    j["p1"] = c.p1;
    j["p2"] = c.p2;
    j["eps_cap"] = c.eps_cap;
    j["hub_edges"] = c.hub_edges;
    j["max_vertices"] = c.max_vertices;
    j["max_mult"] = c.max_mult;
    j["min_part"] = c.min_part;
    j["max_part"] = c.max_part;
    j["q"] = c.q;
    j["max_attempts"] = c.max_attempts;
  }
  return j;
}

std::vector<SweepRow> sweep_mplus(const std::vector<std::uint64_t>& m_grid, double alpha, double C,
                                  std::size_t trials, std::uint64_t seed, unsigned threads) {
  std::vector<std::pair<std::uint64_t, double>> points;
  for (std::uint64_t m : m_grid) points.emplace_back(m, mplus_rho(alpha, C, m));
  const auto results = link_trials(points, trials, seed, threads);
  std::vector<SweepRow> rows;
  for (std::size_t g = 0; g < points.size(); ++g) {
    const std::vector<std::pair<bool, double>> slice(results.begin() + g * trials,
                                                     results.begin() + (g + 1) * trials);
    const double m = static_cast<double>(points[g].first);
    const double bound = 10.0 / (std::sqrt(C) * std::pow(m, 1.0 - alpha / 2.0));
    rows.push_back(sweep_point(m, points[g].first, points[g].second, bound, slice));
  }
  return rows;
}

std::vector<SweepRow> sweep_density(int k, double d, const std::vector<int>& l_grid,
                                    std::size_t trials, std::uint64_t seed, unsigned threads) {
  std::vector<std::pair<std::uint64_t, double>> points;
  std::vector<ReductionParams> reductions;
  for (int l : l_grid) {
    reductions.push_back(reduction_params(k, l, d));
    if (reductions.back().m < 2) throw InvalidInput("l = " + std::to_string(l) + " gives m < 2");
    points.emplace_back(reductions.back().m, reductions.back().rho);
  }
  const auto results = link_trials(points, trials, seed, threads);
  std::vector<SweepRow> rows;
  for (std::size_t g = 0; g < points.size(); ++g) {
    const std::vector<std::pair<bool, double>> slice(results.begin() + g * trials,
                                                     results.begin() + (g + 1) * trials);
    const ReductionParams& r = reductions[g];
    const double m = static_cast<double>(r.m);
    const double bound = 10.0 / (std::sqrt(r.C) * std::pow(m, 1.0 - r.alpha / 2.0));
    rows.push_back(sweep_point(l_grid[g], r.m, r.rho, bound, slice));
  }
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral certification of random group presentations", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  RunConfig cfg;
  std::string m_text;
  std::optional<std::string> m_opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master seed");
    sub->add_option("--out", cfg.out_path, "Output file (stdout when absent)");
    sub->add_option("--tol", cfg.tol, "Spectral tolerance");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--trials", cfg.trials, "Number of trials");
  };
  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "density, binomial, bprime or mplus");
    sub->add_option("--k", cfg.k, "Number of generators");
    sub->add_option("--l", cfg.l, "Relator length");
    sub->add_option("--d", cfg.d, "Density");
    sub->add_option("--rho", cfg.rho, "Inclusion probability");
    sub->add_option("--m", cfg.m, "Generators of the positive model (list for verify/sweep)");
    sub->add_option("--alpha", cfg.alpha, "Exponent in rho = C / m^alpha");
    sub->add_option("--c", cfg.C, "Constant in rho = C / m^alpha");
  };

  CLI::App* sample_cmd = app.add_subcommand("sample", "Sample a presentation");
  CLI::App* link_cmd = app.add_subcommand("link", "Build the link of an M+ presentation");
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Random-walk spectrum of a graph or link");
  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify a presentation or emit bounds");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a lemma check");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Link spectra over a grid, as CSV");
  for (CLI::App* sub : {sample_cmd, link_cmd, spectrum_cmd, certify_cmd, verify_cmd, sweep_cmd}) {
    common(sub);
    model_flags(sub);
  }
  for (CLI::App* sub : {link_cmd, spectrum_cmd, certify_cmd}) {
    sub->add_option("--in", cfg.in_path, "Presentation JSON");
    sub->add_option("--mode", cfg.mode, "automatic, dense or iterative");
  }
  link_cmd->add_option("--part", cfg.part, "full, L1, L2 or L3");
  spectrum_cmd->add_option("--graph", cfg.graph_path, "Edge-list file");
  certify_cmd->add_flag("--emit-bounds", cfg.emit_bounds, "Density-model bounds from --k --l --d");
  verify_cmd->add_option("--lemma", cfg.lemma, "union, deletion, er, degree, cos, mplus-link, angle");
  verify_cmd->add_option("--n", cfg.n, "Vertices per side");
  verify_cmd->add_option("--vertices", cfg.vertices, "Union lemma vertex count");
  verify_cmd->add_option("--k-graphs", cfg.k_graphs, "Union lemma component count");
  verify_cmd->add_option("--eps", cfg.eps, "Union lemma degree band");
  verify_cmd->add_option("--degree", cfg.degree, "Union lemma nominal degree");
  verify_cmd->add_option("--p1", cfg.p1, "Deletion lemma E1 density");
  verify_cmd->add_option("--p2", cfg.p2, "Deletion lemma E2 density");
  verify_cmd->add_option("--eps-cap", cfg.eps_cap, "Deletion lemma degree-ratio cap");
  verify_cmd->add_option("--hub-edges", cfg.hub_edges, "Deletion lemma edges forced at vertex 0");
  verify_cmd->add_option("--max-vertices", cfg.max_vertices, "Cos check graph size");
  verify_cmd->add_option("--max-mult", cfg.max_mult, "Cos check edge multiplicity");
  verify_cmd->add_option("--min-part", cfg.min_part, "Angle check smallest part");
  verify_cmd->add_option("--max-part", cfg.max_part, "Angle check largest part");
  verify_cmd->add_option("--q", cfg.q, "Angle check triangle probability");
  verify_cmd->add_option("--max-attempts", cfg.max_attempts, "Angle check complexes to try");
  sweep_cmd->add_option("--l-grid", cfg.l_grid, "Comma-separated l values (density sweep)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample_cmd->parsed()) {
      cfg.subcommand = "sample";
      return cmd_sample(cfg, out);
    }
    if (link_cmd->parsed()) {
      cfg.subcommand = "link";
      return cmd_link(cfg, out);
    }
    if (spectrum_cmd->parsed()) {
      cfg.subcommand = "spectrum";
      return cmd_spectrum(cfg, out);
    }
    if (certify_cmd->parsed()) {
      cfg.subcommand = "certify";
      return cmd_certify(cfg, out, err);
    }
    if (verify_cmd->parsed()) {
      cfg.subcommand = "verify";
      return cmd_verify(cfg, out, err);
    }
    cfg.subcommand = "sweep";
    return cmd_sweep(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace zuklab
