#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heterogen/graphon.hpp"
#include "heterogen/poly_filter.hpp"

namespace heterogen {

struct ExperimentConfig {
  Graphon graphon;
  PolyFilter filter;
  std::vector<std::uint32_t> sizes;  // strictly increasing
  std::uint32_t trials = 1;
  std::uint64_t base_seed = 0;
  std::uint32_t d_override = 0;  // 0: d = n per size
  double alpha = 2.0;            // proportional-regime bound for overrides
  unsigned threads = 1;          // trial workers; 0 picks hardware count
};

struct ExperimentRow {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint32_t trials = 0;
  double mean_h = 0.0;
  double reference = 0.0;      // mean mu_n (concentration) or h_inf (convergence)
  double mean_abs_dev = 0.0;
  double std_dev = 0.0;
};

// Per-trial deviation |h - mu_n| against the graph-specific spectral
// expectation; mu_n via the dense eigensolver for n <= 2000, the exact
// trace route above. Trial seeds derive from (base_seed, n, trial), so
// any trial can be re-run on its own.
std::vector<ExperimentRow> run_concentration(const ExperimentConfig& cfg);

// Per-trial deviation |h - h_inf| against the graphon limit, computed
// once through limit_heterophily.
std::vector<ExperimentRow> run_convergence(const ExperimentConfig& cfg);

// CSV with header n,d,trials,mean_h,reference,mean_abs_dev,std_dev.
// Formatting is fixed so identical configs give identical bytes.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

// Static log-log SVG of mean_abs_dev against n with a slope -1/2
// reference line anchored at the first row.
std::string rows_to_svg(const std::vector<ExperimentRow>& rows,
                        const std::string& title);

}  // namespace heterogen
