#pragma once

#include <cstdint>
#include <string>

#include "heterogen/calibrate.hpp"
#include "heterogen/experiments.hpp"
#include "heterogen/graphon.hpp"
#include "heterogen/heterophily.hpp"
#include "heterogen/poly_filter.hpp"

namespace heterogen {

// Graphon spec document:
//   {"family":"constant","p":0.5}
//   {"family":"sbm","alpha":[..],"P":[[..]]}
//   {"family":"parametric","kernel":"<id>","params":{..}}
Graphon graphon_from_json(const std::string& text);
std::string graphon_to_json(const Graphon& g);

// Filter spec document: {"coeffs":[a0,..], "gain": g} (gain optional).
PolyFilter filter_from_json(const std::string& text);
std::string filter_to_json(const PolyFilter& f);

struct GenerateConfig {
  Graphon graphon;
  PolyFilter filter;
  std::uint32_t n = 0;
  std::uint32_t d = 0;  // 0: default policy d = n
  std::uint64_t seed = 0;
  double alpha = 2.0;
};
GenerateConfig generate_config_from_json(const std::string& text);

struct CalibrateConfig {
  Graphon graphon;
  PolyFilter filter;
  double target_h = 0.0;
  std::uint32_t n = 1000;
  std::uint32_t d = 0;
  std::uint64_t seed = 0;
  CalibrationOptions::Reference reference =
      CalibrationOptions::Reference::kLimit;
  std::uint32_t pilot_n = 1000;
};
CalibrateConfig calibrate_config_from_json(const std::string& text);

// Experiment config: {"graphon":..,"filter":..,"sizes":[..],"trials":..,
// "base_seed":.., "d":opt, "alpha":opt, "threads":opt}.
ExperimentConfig experiment_config_from_json(const std::string& text);

std::string heterophily_report_to_json(const HeterophilyReport& r);

// Report for cmd_measure: both formulas plus their gap.
std::string measure_report_to_json(std::uint32_t n, std::uint32_t d,
                                   double h_trace, double h_edge_sum);

std::string calibration_result_to_json(const CalibrationResult& r,
                                       const std::string& reference_kind);

// UTC wall-clock in ISO 8601, for report/manifest stamps.
std::string iso8601_utc_now();

}  // namespace heterogen
