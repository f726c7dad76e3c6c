#include "heterogen/calibrate.hpp"

#include <cmath>
#include <stdexcept>

#include "heterogen/rng.hpp"

namespace heterogen {

namespace {

// Solves the target against the gain-1 reference value of the filter shape.
double solve_gain(const Graphon& g, const PolyFilter& f0, double h_target,
                  const CalibrationOptions& opts) {
  if (!(h_target >= 0.0))
    throw std::invalid_argument("calibrate: target must be >= 0");
  if (h_target == 0.0) return 0.0;

  const PolyFilter shape = f0.with_gain(1.0);
  double h0 = 0.0;
  switch (opts.reference) {
    case CalibrationOptions::Reference::kLimit:
      h0 = limit_heterophily(g, shape);
      break;
    case CalibrationOptions::Reference::kPilotMu: {
      const GraphSample pilot =
          sample_graph(g, opts.pilot_n, derive_seed(opts.pilot_seed, {kGraphStream}));
      h0 = expected_heterophily_trace(pilot, shape);
      break;
    }
  }
  if (h0 <= 0.0)
    throw UnreachableTargetError(
        "calibrate: reference heterophily is 0, positive target unreachable");
  return std::sqrt(h_target / h0);
}

}  // namespace

CalibrationResult calibrate_gain(const Graphon& g, const PolyFilter& f0,
                                 double h_target,
                                 const CalibrationOptions& opts) {
  CalibrationResult result;
  result.h_target = h_target;
  result.gain = solve_gain(g, f0, h_target, opts);
  result.h_limit_achieved = limit_heterophily(g, f0.with_gain(result.gain));

  if (opts.verify) {
    const std::uint32_t n = opts.verification_n;
    const std::uint32_t d =
        opts.verification_d == 0 ? default_dimension(n) : opts.verification_d;
    const PolyFilter calibrated = f0.with_gain(result.gain);
    const GraphSample s =
        sample_graph(g, n, derive_seed(opts.verification_seed, {kGraphStream}));
    const FeatureMatrix x0 = sample_white_features(
        n, d, derive_seed(opts.verification_seed, {kFeatureStream}));
    const FeatureMatrix x = apply_filter(calibrated, s, x0);
    result.h_empirical_check = empirical_heterophily(s, x);
    result.verification_n = n;
    result.verification_seed = opts.verification_seed;
  }
  return result;
}

std::tuple<GraphSample, FeatureMatrix, CalibrationResult> generate_with_target(
    const Graphon& g, const PolyFilter& f0, double h_target, std::uint32_t n,
    std::uint32_t d, std::uint64_t seed, const CalibrationOptions& opts) {
  CalibrationOptions no_verify = opts;
  no_verify.verify = false;  // the generated sample itself is the check
  CalibrationResult result = calibrate_gain(g, f0, h_target, no_verify);

  const PolyFilter calibrated = f0.with_gain(result.gain);
  GraphSample s = sample_graph(g, n, derive_seed(seed, {kGraphStream}));
  const FeatureMatrix x0 =
      sample_white_features(n, d, derive_seed(seed, {kFeatureStream}));
  FeatureMatrix x = apply_filter(calibrated, s, x0);

  result.h_empirical_check = empirical_heterophily(s, x);
  result.verification_n = n;
  result.verification_seed = seed;
  return {std::move(s), std::move(x), std::move(result)};
}

}  // namespace heterogen
