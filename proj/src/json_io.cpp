#include "zuklab/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "zuklab/error.hpp"

namespace zuklab {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const Presentation& p) {
  Json rels = Json::array();
  for (const Word& w : p.relators) rels.push_back(w);
  return Json{{"alphabet", p.alphabet_size}, {"positive_only", p.positive_only}, {"relators", rels}};
}

Presentation presentation_from_json(const Json& j) {
  try {
    Presentation p;
    p.alphabet_size = j.at("alphabet").get<int>();
    p.positive_only = j.value("positive_only", false);
    for (const auto& r : j.at("relators")) p.relators.push_back(r.get<Word>());
    std::sort(p.relators.begin(), p.relators.end());
    p.validate();
    return p;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed presentation: ") + e.what());
  }
}

Json to_json(const ModelParams& p) {
  Json j{{"model", to_string(p.model)}};
  switch (p.model) {
    case Model::density:
      j["k"] = p.k;
      j["l"] = p.l;
      j["d"] = p.d;
      break;
    case Model::binomial:
    case Model::bprime:
      j["k"] = p.k;
      j["l"] = p.l;
      j["rho"] = p.rho;
      break;
    case Model::mplus:
      j["m"] = p.m;
      if (p.alpha) {
        j["alpha"] = *p.alpha;
        j["C"] = p.C;
      } else {
        j["rho"] = p.rho;
      }
      break;
  }
  j["seed"] = p.seed;
  return j;
}

Json to_json(const SpectralReport& r) {
  Json j{{"is_connected", r.is_connected},
         {"solver", to_string(r.solver)},
         {"lambda2", r.lambda2},
         {"lambda_bipartite", optional_json(r.lambda_bipartite)},
         {"residual", r.residual},
         {"iterations", r.iterations}};
  if (r.bipartition) {
    j["bipartition"] = {{"side1", r.bipartition->side1}, {"side2", r.bipartition->side2}};
  } else {
    j["bipartition"] = nullptr;
  }
  j["spectrum"] = r.spectrum;
  return j;
}

Json to_json(const ZukVerdict& v) {
  return Json{{"verdict", to_string(v.verdict)},
              {"reason", v.reason},
              {"max_link_lambda", optional_json(v.max_link_lambda)},
              {"threshold", v.threshold},
              {"slack", optional_json(v.slack)},
              {"gallery_connected", v.gallery_connected},
              {"links_connected", v.links_connected},
              {"links_checked", v.links_checked}};
}

Json to_json(const ConvergenceReport& r) {
  return Json{{"iterates", r.iterates},
              {"fitted_rate", r.fitted_rate},
              {"fitted_constant", r.fitted_constant}};
}

Json to_json(const Certificate& c) {
  Json j;
  j["params"] = c.params ? to_json(*c.params) : Json(nullptr);
  j["generators"] = c.generators;
  j["relators"] = c.relators;
  j["link_connected"] = c.link_connected;
  j["lambda_measured"] = optional_json(c.lambda_measured);
  j["lambda_zero"] = c.lambda_zero;
  j["residual"] = c.residual;
  j["solver"] = to_string(c.solver);
  j["threshold"] = c.threshold;
  j["slack_eps"] = optional_json(c.slack_eps);
  j["theta0"] = optional_json(c.theta0);
  j["p_range"] = c.p_max ? Json::array({2.0, *c.p_max}) : Json(nullptr);
  j["p_range_note"] = c.p_range_note;
  j["confdim_lower"] = optional_json(c.confdim_lower);
  j["confdim_upper"] = optional_json(c.confdim_upper);
  j["verdict"] = to_string(c.verdict);
  j["reason"] = c.reason;
  return j;
}

Json to_json(const HarnessReport& r) {
  Json trials = Json::array();
  for (const TrialResult& t : r.trials) {
    Json inputs = Json::object();
    for (const auto& [k, v] : t.inputs) inputs[k] = v;
    trials.push_back({{"trial_index", t.trial_index},
                      {"inputs", inputs},
                      {"measured", t.measured},
                      {"bound", t.bound},
                      {"holds", t.holds},
                      {"skipped", t.skipped},
                      {"margin", t.margin},
                      {"note", t.note}});
  }
  Json summary = Json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  return Json{{"lemma", r.lemma},
              {"hypothesis", r.hypothesis},
              {"evaluated", r.evaluated},
              {"skipped", r.skipped},
              {"fraction_holding", r.fraction_holding},
              {"mean_measured", r.mean_measured},
              {"max_measured", r.max_measured},
              {"vacuous", r.vacuous},
              {"summary", summary},
              {"trials", trials}};
}

Json to_json(const ReductionParams& r) {
  return Json{{"m", r.m},
              {"m_exact", r.m_exact},
              {"rounded", r.rounded},
              {"rho", r.rho},
              {"alpha", r.alpha},
              {"C", r.C},
              {"probability_loss", r.probability_loss}};
}

Json to_json(const PartiteComplex& x) {
  return Json{{"n", x.dimension()}, {"types", x.vertex_types()}, {"cells", x.cells()}};
}

PartiteComplex complex_from_json(const Json& j) {
  try {
    return PartiteComplex::build(j.at("n").get<int>(), j.at("types").get<std::vector<int>>(),
                                 j.at("cells").get<std::vector<Simplex>>());
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed complex: ") + e.what());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

Json envelope(const Json& config, const Json& payload) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream stamp;
  stamp << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return Json{{"config", config},
              {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"payload", payload},
              {"payload_sha256", sha256_hex(payload.dump())},
              {"generated_at", stamp.str()}};
}

}  // namespace zuklab
