#pragma once

#include <cstdint>
#include <tuple>

#include "heterogen/errors.hpp"
#include "heterogen/features.hpp"
#include "heterogen/graphon.hpp"
#include "heterogen/heterophily.hpp"

namespace heterogen {

// Target heterophily cannot be reached: the gain-1 reference value is 0
// (empty graphon, or a filter that vanishes on the degree support).
class UnreachableTargetError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct CalibrationResult {
  double gain = 0.0;
  double h_target = 0.0;
  double h_limit_achieved = 0.0;
  double h_empirical_check = 0.0;
  std::uint32_t verification_n = 0;
  std::uint64_t verification_seed = 0;
};

struct CalibrationOptions {
  // What the gain is solved against: the graphon limit (Theorem-level
  // asymptotic value, the default) or mu_n of a pilot sample.
  enum class Reference { kLimit, kPilotMu };
  Reference reference = Reference::kLimit;
  std::uint32_t pilot_n = 1000;
  std::uint64_t pilot_seed = 0;

  bool verify = true;  // draw a verification sample and measure h on it
  std::uint32_t verification_n = 1000;
  std::uint32_t verification_d = 0;  // 0 -> d = n
  std::uint64_t verification_seed = 0;
};

// Solves gain = sqrt(h_target / h0) where h0 is the reference value of
// the gain-1 filter shape; the limit is homogeneous of degree 2 in f, so
// this is exact. Throws UnreachableTargetError when h0 = 0 and the
// target is positive.
CalibrationResult calibrate_gain(const Graphon& g, const PolyFilter& f0,
                                 double h_target,
                                 const CalibrationOptions& opts = {});

// Calibrates, samples a graph, generates filtered features, and measures
// the empirical heterophily of the produced pair. Graph and feature
// streams are derived from the single seed, so the triple is reproducible
// from (inputs, seed).
std::tuple<GraphSample, FeatureMatrix, CalibrationResult> generate_with_target(
    const Graphon& g, const PolyFilter& f0, double h_target, std::uint32_t n,
    std::uint32_t d, std::uint64_t seed,
    const CalibrationOptions& opts = {});

}  // namespace heterogen
