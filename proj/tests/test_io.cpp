#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "heterogen/errors.hpp"
#include "heterogen/io.hpp"
#include "heterogen/json_io.hpp"

using namespace heterogen;

TEST_CASE("edge csv round trip") {
  const GraphSample s = sample_graph(Graphon::constant(0.5), 40, 11);
  const std::string csv = edges_to_csv(s);
  CHECK(csv.rfind("u,v\n", 0) == 0);

  const auto edges = edges_from_csv(csv);
  CHECK(edges.size() == s.num_edges());
  const GraphSample round = graph_from_edges(s.n, edges);
  CHECK(round.neighbors == s.neighbors);
  CHECK(round.offsets == s.offsets);

  CHECK_THROWS_AS(edges_from_csv("a,b\n0,1\n"), IoError);
  CHECK_THROWS_AS(edges_from_csv("u,v\n0\n"), IoError);
  CHECK_THROWS_AS(edges_from_csv("u,v\nx,1\n"), IoError);
}

TEST_CASE("feature csv round trips doubles exactly") {
  const FeatureMatrix x = sample_white_features(17, 5, 23);
  const std::string csv = features_to_csv(x);
  CHECK(csv.rfind("node,f0,f1,f2,f3,f4\n", 0) == 0);
  const FeatureMatrix round = features_from_csv(csv);
  CHECK(round.n == x.n);
  CHECK(round.d == x.d);
  CHECK(round.values == x.values);  // bitwise

  CHECK_THROWS_AS(features_from_csv("nope,f0\n0,1\n"), IoError);
  CHECK_THROWS_AS(features_from_csv("node,f0\n1,0.5\n"), IoError);  // id gap
  CHECK_THROWS_AS(features_from_csv("node,f0\n0,0.5,9\n"), IoError);
}

TEST_CASE("feature binary round trips exactly") {
  const FeatureMatrix x = sample_white_features(9, 4, 5);
  const std::string bin = features_to_bin(x);
  CHECK(bin.size() == 16 + 9 * 4 * 8);
  const FeatureMatrix round = features_from_bin(bin);
  CHECK(round.n == x.n);
  CHECK(round.d == x.d);
  CHECK(round.values == x.values);

  CHECK_THROWS_AS(features_from_bin(bin.substr(0, 20)), IoError);
}

TEST_CASE("latents csv") {
  const GraphSample s = sample_graph(Graphon::constant(0.3), 5, 2);
  const std::string csv = latents_to_csv(s);
  CHECK(csv.rfind("node,u\n", 0) == 0);
}

TEST_CASE("atomic write leaves no temp file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "heterogen_io_test";
  fs::create_directories(dir);
  const std::string target = (dir / "out.txt").string();
  atomic_write_file(target, "hello\n");
  CHECK(read_file(target) == "hello\n");
  CHECK_FALSE(fs::exists(target + ".tmp"));
  fs::remove_all(dir);

  CHECK_THROWS_AS(read_file("/nonexistent/heterogen/file"), IoError);
  CHECK_THROWS_AS(atomic_write_file("/nonexistent/heterogen/file", "x"),
                  IoError);
}

TEST_CASE("graphon json round trip") {
  const Graphon er = graphon_from_json(R"({"family":"constant","p":0.25})");
  CHECK(er.family() == GraphonFamily::kConstant);
  CHECK(er.constant_p() == 0.25);
  CHECK(graphon_from_json(graphon_to_json(er)).constant_p() == 0.25);

  const Graphon sbm = graphon_from_json(
      R"({"family":"sbm","alpha":[0.5,0.5],"P":[[0.8,0.2],[0.2,0.8]]})");
  CHECK(sbm.family() == GraphonFamily::kStepFunction);
  CHECK(sbm.block_degrees()[0] == doctest::Approx(0.5));
  const Graphon sbm2 = graphon_from_json(graphon_to_json(sbm));
  CHECK(sbm2.prob_matrix() == sbm.prob_matrix());

  const Graphon param = graphon_from_json(
      R"({"family":"parametric","kernel":"logistic_sum","params":{"c":2.0}})");
  CHECK(param.family() == GraphonFamily::kParametric);
  CHECK(param.kernel_id() == "logistic_sum");
  CHECK(graphon_from_json(graphon_to_json(param)).kernel_params().at("c") == 2.0);
}

TEST_CASE("graphon json errors") {
  CHECK_THROWS_AS(graphon_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(graphon_from_json(R"({"family":"mystery"})"), ConfigError);
  CHECK_THROWS_AS(graphon_from_json(R"({"family":"constant"})"), ConfigError);
  CHECK_THROWS_AS(graphon_from_json(R"({"family":"constant","p":2})"),
                  ConfigError);
  CHECK_THROWS_AS(graphon_from_json(R"({"family":"constant","p":0.5,"x":1})"),
                  ConfigError);
  CHECK_THROWS_AS(
      graphon_from_json(R"({"family":"sbm","alpha":[1.0],"P":[[0.5,0.5]]})"),
      ConfigError);
}

TEST_CASE("filter json") {
  const PolyFilter f = filter_from_json(R"({"coeffs":[1.0,0.5],"gain":2.0})");
  CHECK(f.coeffs == std::vector<double>{1.0, 0.5});
  CHECK(f.gain == 2.0);
  CHECK(filter_from_json(R"({"coeffs":[1.0]})").gain == 1.0);
  const PolyFilter round = filter_from_json(filter_to_json(f));
  CHECK(round.coeffs == f.coeffs);
  CHECK(round.gain == f.gain);
  CHECK_THROWS_AS(filter_from_json(R"({"coeffs":[]})"), ConfigError);
  CHECK_THROWS_AS(filter_from_json(R"({"gain":1.0})"), ConfigError);
}

TEST_CASE("generate config parsing") {
  const GenerateConfig cfg = generate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "n": 100, "seed": 42})");
  CHECK(cfg.n == 100);
  CHECK(cfg.d == 0);
  CHECK(cfg.seed == 42);
  CHECK(cfg.alpha == 2.0);

  CHECK_THROWS_AS(generate_config_from_json(R"({"n":10})"), ConfigError);
  CHECK_THROWS_AS(generate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "n": 0})"), ConfigError);
  CHECK_THROWS_AS(generate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "n": 10, "typo": 1})"), ConfigError);
}

TEST_CASE("calibrate config parsing") {
  const CalibrateConfig cfg = calibrate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "target_h": 0.2, "n": 500, "seed": 1,
    "reference": "pilot_mu", "pilot_n": 200})");
  CHECK(cfg.target_h == 0.2);
  CHECK(cfg.n == 500);
  CHECK(cfg.reference == CalibrationOptions::Reference::kPilotMu);
  CHECK(cfg.pilot_n == 200);

  CHECK_THROWS_AS(calibrate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "target_h": -1})"), ConfigError);
  CHECK_THROWS_AS(calibrate_config_from_json(R"({
    "graphon": {"family":"constant","p":0.5},
    "filter": {"coeffs":[1.0]},
    "target_h": 0.1, "reference": "psychic"})"), ConfigError);
}

TEST_CASE("experiment config parsing") {
  const ExperimentConfig cfg = experiment_config_from_json(R"({
    "graphon": {"family":"constant","p":0.3},
    "filter": {"coeffs":[1.0,1.0]},
    "sizes": [100, 400], "trials": 5, "base_seed": 9})");
  CHECK(cfg.sizes == std::vector<std::uint32_t>{100, 400});
  CHECK(cfg.trials == 5);
  CHECK(cfg.base_seed == 9);

  CHECK_THROWS_AS(experiment_config_from_json(R"({
    "graphon": {"family":"constant","p":0.3},
    "filter": {"coeffs":[1.0]},
    "sizes": [400, 100], "trials": 5})"), ConfigError);
}

TEST_CASE("report json carries schema, version and optionals") {
  HeterophilyReport r;
  r.h_empirical = 0.5;
  r.n = 10;
  r.d = 3;
  const std::string with_nulls = heterophily_report_to_json(r);
  CHECK(with_nulls.find("\"schema\": \"heterogen/1\"") != std::string::npos);
  CHECK(with_nulls.find("\"mu_n\": null") != std::string::npos);

  r.mu_n = 0.51;
  r.h_limit = 0.5;
  const std::string full = heterophily_report_to_json(r);
  CHECK(full.find("\"mu_n\": 0.51") != std::string::npos);

  const std::string measure = measure_report_to_json(4, 2, 1.0, 1.0);
  CHECK(measure.find("\"identity_gap\": 0.0") != std::string::npos);
}
