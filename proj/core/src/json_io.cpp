#include "heterogen/json_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <set>

#include <json.hpp>

#include "heterogen/errors.hpp"
#include "heterogen/version.hpp"

namespace heterogen {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ConfigError(std::string(what) + ": invalid JSON");
  return j;
}

void expect_keys(const json& j, const char* what,
                 const std::set<std::string>& allowed) {
  if (!j.is_object())
    throw ConfigError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (allowed.find(key) == allowed.end())
      throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
}

const json& require(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double as_double(const json& j, const char* what) {
  if (!j.is_number())
    throw ConfigError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::uint64_t as_u64(const json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  throw ConfigError(std::string(what) + ": expected a nonnegative integer");
}

std::uint32_t as_u32(const json& j, const char* what) {
  const std::uint64_t v = as_u64(j, what);
  if (v > 0xFFFFFFFFull)
    throw ConfigError(std::string(what) + ": value too large");
  return static_cast<std::uint32_t>(v);
}

Graphon graphon_from(const json& j) {
  const std::string family =
      require(j, "family", "graphon").get<std::string>();
  try {
    if (family == "constant") {
      expect_keys(j, "graphon", {"family", "p"});
      return Graphon::constant(as_double(require(j, "p", "graphon"), "graphon.p"));
    }
    if (family == "sbm") {
      expect_keys(j, "graphon", {"family", "alpha", "P"});
      std::vector<double> alpha;
      for (const auto& a : require(j, "alpha", "graphon"))
        alpha.push_back(as_double(a, "graphon.alpha"));
      std::vector<std::vector<double>> P;
      for (const auto& row : require(j, "P", "graphon")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(as_double(v, "graphon.P"));
        P.push_back(std::move(r));
      }
      return Graphon::step_function(std::move(alpha), std::move(P));
    }
    if (family == "parametric") {
      expect_keys(j, "graphon", {"family", "kernel", "params"});
      const std::string kernel =
          require(j, "kernel", "graphon").get<std::string>();
      KernelParams params;
      if (j.contains("params"))
        for (const auto& [key, v] : j.at("params").items())
          params[key] = as_double(v, "graphon.params");
      return Graphon::parametric(kernel, params);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("graphon: ") + e.what());
  }
  throw ConfigError("graphon: unknown family '" + family + "'");
}

PolyFilter filter_from(const json& j) {
  expect_keys(j, "filter", {"coeffs", "gain"});
  std::vector<double> coeffs;
  for (const auto& a : require(j, "coeffs", "filter"))
    coeffs.push_back(as_double(a, "filter.coeffs"));
  double gain = 1.0;
  if (j.contains("gain")) gain = as_double(j.at("gain"), "filter.gain");
  try {
    return PolyFilter::make(std::move(coeffs), gain);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("filter: ") + e.what());
  }
}

json graphon_to(const Graphon& g) {
  json j;
  switch (g.family()) {
    case GraphonFamily::kConstant:
      j["family"] = "constant";
      j["p"] = g.constant_p();
      break;
    case GraphonFamily::kStepFunction:
      j["family"] = "sbm";
      j["alpha"] = g.block_fractions();
      j["P"] = g.prob_matrix();
      break;
    case GraphonFamily::kParametric:
      j["family"] = "parametric";
      j["kernel"] = g.kernel_id();
      j["params"] = g.kernel_params();
      break;
  }
  return j;
}

}  // namespace

Graphon graphon_from_json(const std::string& text) {
  return graphon_from(parse(text, "graphon"));
}

std::string graphon_to_json(const Graphon& g) { return graphon_to(g).dump(); }

PolyFilter filter_from_json(const std::string& text) {
  return filter_from(parse(text, "filter"));
}

std::string filter_to_json(const PolyFilter& f) {
  json j;
  j["coeffs"] = f.coeffs;
  j["gain"] = f.gain;
  return j.dump();
}

GenerateConfig generate_config_from_json(const std::string& text) {
  const json j = parse(text, "generate config");
  expect_keys(j, "generate config",
              {"graphon", "filter", "n", "d", "seed", "alpha"});
  GenerateConfig cfg;
  cfg.graphon = graphon_from(require(j, "graphon", "generate config"));
  cfg.filter = filter_from(require(j, "filter", "generate config"));
  cfg.n = as_u32(require(j, "n", "generate config"), "generate config.n");
  if (cfg.n == 0) throw ConfigError("generate config: n must be >= 1");
  if (j.contains("d")) cfg.d = as_u32(j.at("d"), "generate config.d");
  if (j.contains("seed")) cfg.seed = as_u64(j.at("seed"), "generate config.seed");
  if (j.contains("alpha")) {
    cfg.alpha = as_double(j.at("alpha"), "generate config.alpha");
    if (!(cfg.alpha > 1.0))
      throw ConfigError("generate config: alpha must be > 1");
  }
  return cfg;
}

CalibrateConfig calibrate_config_from_json(const std::string& text) {
  const json j = parse(text, "calibrate config");
  expect_keys(j, "calibrate config",
              {"graphon", "filter", "target_h", "n", "d", "seed", "reference",
               "pilot_n"});
  CalibrateConfig cfg;
  cfg.graphon = graphon_from(require(j, "graphon", "calibrate config"));
  cfg.filter = filter_from(require(j, "filter", "calibrate config"));
  cfg.target_h =
      as_double(require(j, "target_h", "calibrate config"), "target_h");
  if (!(cfg.target_h >= 0.0))
    throw ConfigError("calibrate config: target_h must be >= 0");
  if (j.contains("n")) cfg.n = as_u32(j.at("n"), "calibrate config.n");
  if (cfg.n == 0) throw ConfigError("calibrate config: n must be >= 1");
  if (j.contains("d")) cfg.d = as_u32(j.at("d"), "calibrate config.d");
  if (j.contains("seed"))
    cfg.seed = as_u64(j.at("seed"), "calibrate config.seed");
  if (j.contains("reference")) {
    const std::string ref = j.at("reference").get<std::string>();
    if (ref == "limit")
      cfg.reference = CalibrationOptions::Reference::kLimit;
    else if (ref == "pilot_mu")
      cfg.reference = CalibrationOptions::Reference::kPilotMu;
    else
      throw ConfigError(
          "calibrate config: reference must be 'limit' or 'pilot_mu'");
  }
  if (j.contains("pilot_n")) {
    cfg.pilot_n = as_u32(j.at("pilot_n"), "calibrate config.pilot_n");
    if (cfg.pilot_n == 0)
      throw ConfigError("calibrate config: pilot_n must be >= 1");
  }
  return cfg;
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  const json j = parse(text, "experiment config");
  expect_keys(j, "experiment config",
              {"graphon", "filter", "sizes", "trials", "base_seed", "d",
               "alpha", "threads"});
  ExperimentConfig cfg;
  cfg.graphon = graphon_from(require(j, "graphon", "experiment config"));
  cfg.filter = filter_from(require(j, "filter", "experiment config"));
  for (const auto& s : require(j, "sizes", "experiment config"))
    cfg.sizes.push_back(as_u32(s, "experiment config.sizes"));
  cfg.trials = as_u32(require(j, "trials", "experiment config"), "trials");
  if (j.contains("base_seed"))
    cfg.base_seed = as_u64(j.at("base_seed"), "experiment config.base_seed");
  if (j.contains("d")) cfg.d_override = as_u32(j.at("d"), "experiment config.d");
  if (j.contains("alpha")) {
    cfg.alpha = as_double(j.at("alpha"), "experiment config.alpha");
    if (!(cfg.alpha > 1.0))
      throw ConfigError("experiment config: alpha must be > 1");
  }
  if (j.contains("threads"))
    cfg.threads = as_u32(j.at("threads"), "experiment config.threads");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i)
    if (cfg.sizes[i] <= cfg.sizes[i - 1])
      throw ConfigError("experiment config: sizes must be strictly increasing");
  if (cfg.sizes.empty() || cfg.sizes.front() == 0)
    throw ConfigError("experiment config: sizes must be nonempty, >= 1");
  if (cfg.trials < 1)
    throw ConfigError("experiment config: trials must be >= 1");
  return cfg;
}

std::string heterophily_report_to_json(const HeterophilyReport& r) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["timestamp"] = iso8601_utc_now();
  j["n"] = r.n;
  j["d"] = r.d;
  j["seed_graph"] = r.seed_graph;
  j["seed_features"] = r.seed_features;
  j["h_empirical"] = r.h_empirical;
  j["mu_n"] = r.mu_n.has_value() ? json(*r.mu_n) : json(nullptr);
  j["h_limit"] = r.h_limit.has_value() ? json(*r.h_limit) : json(nullptr);
  return j.dump(2);
}

std::string measure_report_to_json(std::uint32_t n, std::uint32_t d,
                                   double h_trace, double h_edge_sum) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["timestamp"] = iso8601_utc_now();
  j["n"] = n;
  j["d"] = d;
  j["h_empirical"] = h_trace;
  j["h_edge_sum"] = h_edge_sum;
  j["identity_gap"] = std::fabs(h_trace - h_edge_sum);
  return j.dump(2);
}

std::string calibration_result_to_json(const CalibrationResult& r,
                                       const std::string& reference_kind) {
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["timestamp"] = iso8601_utc_now();
  j["gain"] = r.gain;
  j["h_target"] = r.h_target;
  j["h_limit_achieved"] = r.h_limit_achieved;
  j["h_empirical_check"] = r.h_empirical_check;
  j["verification_n"] = r.verification_n;
  j["verification_seed"] = r.verification_seed;
  j["reference"] = reference_kind;
  return j.dump(2);
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace heterogen
