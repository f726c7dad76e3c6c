// Command-line front end: graph+feature generation, heterophily
// measurement, graphon limits, gain calibration, and the concentration /
// convergence experiment runners.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heterogen/calibrate.hpp"
#include "heterogen/errors.hpp"
#include "heterogen/experiments.hpp"
#include "heterogen/features.hpp"
#include "heterogen/graphon.hpp"
#include "heterogen/heterophily.hpp"
#include "heterogen/io.hpp"
#include "heterogen/json_io.hpp"
#include "heterogen/rng.hpp"
#include "heterogen/version.hpp"

namespace fs = std::filesystem;
using heterogen::ConfigError;
using heterogen::IoError;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse_config_echo(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config file is not valid JSON");
  return j;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& config_echo, const json& seeds,
                    const std::vector<std::string>& outputs, double duration,
                    const json& extra) {
  json m;
  m["schema"] = heterogen::kSchema;
  m["version"] = heterogen::kVersion;
  m["command"] = command;
  m["timestamp"] = heterogen::iso8601_utc_now();
  m["config"] = config_echo;
  m["seeds"] = seeds;
  m["outputs"] = outputs;
  m["duration_seconds"] = duration;
  for (const auto& [key, value] : extra.items()) m[key] = value;
  heterogen::atomic_write_file((out_dir / "manifest.json").string(),
                               m.dump(2) + "\n");
}

// Accepts either inline JSON (leading '{') or a path to a JSON file.
std::string load_spec_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  return heterogen::read_file(arg);
}

struct GenerateArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  bool quiet = false;
};

int run_generate(const GenerateArgs& args) {
  Timer timer;
  const std::string config_text = heterogen::read_file(args.config_path);
  heterogen::GenerateConfig cfg =
      heterogen::generate_config_from_json(config_text);
  if (args.seed) cfg.seed = *args.seed;

  const std::uint32_t d =
      cfg.d == 0 ? heterogen::default_dimension(cfg.n, cfg.alpha) : cfg.d;
  if (cfg.d != 0 &&
      !heterogen::dimension_within_regime(cfg.n, cfg.d, cfg.alpha) &&
      !args.quiet)
    std::cerr << "warning: d=" << cfg.d << " is outside the proportional "
              << "regime d^(1/alpha) <= n <= d^alpha for n=" << cfg.n
              << ", alpha=" << cfg.alpha << "\n";

  const std::uint64_t seed_graph =
      heterogen::derive_seed(cfg.seed, {heterogen::kGraphStream});
  const std::uint64_t seed_features =
      heterogen::derive_seed(cfg.seed, {heterogen::kFeatureStream});

  const heterogen::GraphSample s =
      heterogen::sample_graph(cfg.graphon, cfg.n, seed_graph);
  const heterogen::FeatureMatrix x0 =
      heterogen::sample_white_features(cfg.n, d, seed_features);
  const heterogen::FeatureMatrix x = heterogen::apply_filter(cfg.filter, s, x0);
  const double h = heterogen::empirical_heterophily(s, x);

  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  std::vector<std::string> outputs;
  heterogen::atomic_write_file((out / "edges.csv").string(),
                               heterogen::edges_to_csv(s));
  outputs.push_back("edges.csv");
  if (args.format == "bin") {
    heterogen::atomic_write_file((out / "features.bin").string(),
                                 heterogen::features_to_bin(x));
    outputs.push_back("features.bin");
  } else {
    heterogen::atomic_write_file((out / "features.csv").string(),
                                 heterogen::features_to_csv(x));
    outputs.push_back("features.csv");
  }
  heterogen::atomic_write_file((out / "latents.csv").string(),
                               heterogen::latents_to_csv(s));
  outputs.push_back("latents.csv");

  json seeds;
  seeds["seed"] = cfg.seed;
  seeds["graph"] = seed_graph;
  seeds["features"] = seed_features;
  json extra;
  extra["n"] = cfg.n;
  extra["d"] = d;
  extra["h_empirical"] = h;
  write_manifest(out, "generate", parse_config_echo(config_text), seeds,
                 outputs, timer.seconds(), extra);

  if (!args.quiet)
    std::cout << "generated n=" << cfg.n << " d=" << d
              << " edges=" << s.num_edges() << " h=" << fmt_double(h)
              << " -> " << args.out_dir << "\n";
  return 0;
}

struct MeasureArgs {
  std::string graph_path;
  std::string features_path;
  std::string format = "auto";
};

int run_measure(const MeasureArgs& args) {
  const std::string edge_text = heterogen::read_file(args.graph_path);
  const std::string feat_text = heterogen::read_file(args.features_path);

  const bool bin = args.format == "bin" ||
                   (args.format == "auto" &&
                    args.features_path.size() > 4 &&
                    args.features_path.substr(args.features_path.size() - 4) ==
                        ".bin");
  const heterogen::FeatureMatrix x = bin
                                         ? heterogen::features_from_bin(feat_text)
                                         : heterogen::features_from_csv(feat_text);
  const auto edges = heterogen::edges_from_csv(edge_text);
  const heterogen::GraphSample s = heterogen::graph_from_edges(x.n, edges);

  const double h_trace = heterogen::empirical_heterophily(s, x);
  const double h_edge = heterogen::empirical_heterophily_edge_sum(s, x);
  std::cout << heterogen::measure_report_to_json(x.n, x.d, h_trace, h_edge)
            << "\n";
  return 0;
}

int run_limit(const std::string& graphon_arg, const std::string& filter_arg) {
  const heterogen::Graphon g =
      heterogen::graphon_from_json(load_spec_arg(graphon_arg));
  const heterogen::PolyFilter f =
      heterogen::filter_from_json(load_spec_arg(filter_arg));
  std::cout << fmt_double(heterogen::limit_heterophily(g, f)) << "\n";
  return 0;
}

struct CalibrateArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  bool quiet = false;
};

int run_calibrate(const CalibrateArgs& args) {
  Timer timer;
  const std::string config_text = heterogen::read_file(args.config_path);
  heterogen::CalibrateConfig cfg =
      heterogen::calibrate_config_from_json(config_text);
  if (args.seed) cfg.seed = *args.seed;
  const std::uint32_t d =
      cfg.d == 0 ? heterogen::default_dimension(cfg.n) : cfg.d;

  heterogen::CalibrationOptions opts;
  opts.reference = cfg.reference;
  opts.pilot_n = cfg.pilot_n;
  opts.pilot_seed = cfg.seed;
  const auto [s, x, result] = heterogen::generate_with_target(
      cfg.graphon, cfg.filter, cfg.target_h, cfg.n, d, cfg.seed, opts);

  const std::string reference_kind =
      cfg.reference == heterogen::CalibrationOptions::Reference::kLimit
          ? "limit"
          : "pilot_mu";
  const std::string result_json =
      heterogen::calibration_result_to_json(result, reference_kind);
  std::cout << result_json << "\n";

  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);
    std::vector<std::string> outputs;
    heterogen::atomic_write_file((out / "edges.csv").string(),
                                 heterogen::edges_to_csv(s));
    outputs.push_back("edges.csv");
    if (args.format == "bin") {
      heterogen::atomic_write_file((out / "features.bin").string(),
                                   heterogen::features_to_bin(x));
      outputs.push_back("features.bin");
    } else {
      heterogen::atomic_write_file((out / "features.csv").string(),
                                   heterogen::features_to_csv(x));
      outputs.push_back("features.csv");
    }
    heterogen::atomic_write_file((out / "latents.csv").string(),
                                 heterogen::latents_to_csv(s));
    outputs.push_back("latents.csv");
    heterogen::atomic_write_file((out / "calibration.json").string(),
                                 result_json + "\n");
    outputs.push_back("calibration.json");

    json seeds;
    seeds["seed"] = cfg.seed;
    seeds["graph"] = heterogen::derive_seed(cfg.seed, {heterogen::kGraphStream});
    seeds["features"] =
        heterogen::derive_seed(cfg.seed, {heterogen::kFeatureStream});
    json extra;
    extra["gain"] = result.gain;
    extra["h_empirical"] = result.h_empirical_check;
    write_manifest(out, "calibrate", parse_config_echo(config_text), seeds,
                   outputs, timer.seconds(), extra);
  }
  return 0;
}

struct ExperimentArgs {
  std::string kind;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool plot = false;
  bool quiet = false;
};

int run_experiment(const ExperimentArgs& args) {
  Timer timer;
  const std::string config_text = heterogen::read_file(args.config_path);
  heterogen::ExperimentConfig cfg =
      heterogen::experiment_config_from_json(config_text);
  if (args.seed) cfg.base_seed = *args.seed;
  if (cfg.d_override != 0 && !args.quiet) {
    for (std::uint32_t n : cfg.sizes)
      if (!heterogen::dimension_within_regime(n, cfg.d_override, cfg.alpha))
        std::cerr << "warning: d=" << cfg.d_override
                  << " is outside the proportional regime at n=" << n << "\n";
  }

  std::vector<heterogen::ExperimentRow> rows;
  if (args.kind == "concentration")
    rows = heterogen::run_concentration(cfg);
  else if (args.kind == "convergence")
    rows = heterogen::run_convergence(cfg);
  else
    throw ConfigError("experiment kind must be 'concentration' or 'convergence'");

  const std::string csv = heterogen::rows_to_csv(rows);
  fs::create_directories(args.out_dir);
  const fs::path out(args.out_dir);
  std::vector<std::string> outputs;
  heterogen::atomic_write_file((out / "results.csv").string(), csv);
  outputs.push_back("results.csv");
  if (args.plot) {
    heterogen::atomic_write_file(
        (out / "plot.svg").string(),
        heterogen::rows_to_svg(rows, args.kind + " (mean |h - ref| vs n)"));
    outputs.push_back("plot.svg");
  }

  json seeds;
  seeds["base_seed"] = cfg.base_seed;
  json extra;
  extra["kind"] = args.kind;
  write_manifest(out, "experiment", parse_config_echo(config_text), seeds,
                 outputs, timer.seconds(), extra);

  if (!args.quiet) std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heterogen: graphon graphs + stationary features with "
               "controllable feature heterophily"};
  app.set_version_flag("--version", std::string(heterogen::kVersion));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand(
      "generate", "Sample a graph and filtered features, write a dataset");
  cmd_gen->add_option("--config", gen.config_path, "JSON config file")
      ->required();
  cmd_gen->add_option("--out", gen.out_dir, "output directory")->required();
  std::uint64_t gen_seed = 0;
  auto* gen_seed_opt =
      cmd_gen->add_option("--seed", gen_seed, "override the config seed");
  cmd_gen->add_option("--format", gen.format, "feature file format")
      ->check(CLI::IsMember({"csv", "bin"}));
  cmd_gen->add_flag("--quiet", gen.quiet, "suppress stdout/warnings");

  MeasureArgs meas;
  auto* cmd_meas = app.add_subcommand(
      "measure", "Measure heterophily of an edge list + feature file");
  cmd_meas->add_option("--graph", meas.graph_path, "edges.csv path")
      ->required();
  cmd_meas->add_option("--features", meas.features_path, "features path")
      ->required();
  cmd_meas->add_option("--format", meas.format, "feature file format")
      ->check(CLI::IsMember({"auto", "csv", "bin"}));

  std::string limit_graphon, limit_filter;
  auto* cmd_limit = app.add_subcommand(
      "limit", "Print the limiting heterophily of (graphon, filter)");
  cmd_limit->add_option("--graphon", limit_graphon,
                        "graphon JSON (inline or file path)")
      ->required();
  cmd_limit->add_option("--filter", limit_filter,
                        "filter JSON (inline or file path)")
      ->required();

  CalibrateArgs cal;
  auto* cmd_cal = app.add_subcommand(
      "calibrate", "Solve the filter gain for a heterophily target");
  cmd_cal->add_option("--config", cal.config_path, "JSON config file")
      ->required();
  cmd_cal->add_option("--out", cal.out_dir,
                      "also write the verification dataset here");
  std::uint64_t cal_seed = 0;
  auto* cal_seed_opt =
      cmd_cal->add_option("--seed", cal_seed, "override the config seed");
  cmd_cal->add_option("--format", cal.format, "feature file format")
      ->check(CLI::IsMember({"csv", "bin"}));
  cmd_cal->add_flag("--quiet", cal.quiet, "suppress warnings");

  ExperimentArgs exp;
  auto* cmd_exp = app.add_subcommand(
      "experiment", "Run the concentration or convergence study");
  cmd_exp->add_option("--kind", exp.kind, "concentration|convergence")
      ->required();
  cmd_exp->add_option("--config", exp.config_path, "JSON config file")
      ->required();
  cmd_exp->add_option("--out", exp.out_dir, "output directory")->required();
  std::uint64_t exp_seed = 0;
  auto* exp_seed_opt =
      cmd_exp->add_option("--seed", exp_seed, "override the base seed");
  cmd_exp->add_flag("--plot", exp.plot, "also write a log-log SVG plot");
  cmd_exp->add_flag("--quiet", exp.quiet, "suppress stdout/warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*gen_seed_opt) gen.seed = gen_seed;
  if (*cal_seed_opt) cal.seed = cal_seed;
  if (*exp_seed_opt) exp.seed = exp_seed;

  try {
    if (*cmd_gen) return run_generate(gen);
    if (*cmd_meas) return run_measure(meas);
    if (*cmd_limit) return run_limit(limit_graphon, limit_filter);
    if (*cmd_cal) return run_calibrate(cal);
    if (*cmd_exp) return run_experiment(exp);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
