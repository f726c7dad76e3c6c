#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "heterogen/calibrate.hpp"

using namespace heterogen;

namespace {

CalibrationOptions no_verify() {
  CalibrationOptions opts;
  opts.verify = false;
  return opts;
}

}  // namespace

TEST_CASE("closed-form gain for the ER graphon") {
  // h0 = 0.5 * 1^2, so gain = sqrt(0.2/0.5) = sqrt(0.4).
  const auto result = calibrate_gain(Graphon::constant(0.5),
                                     PolyFilter::make({1.0}), 0.2, no_verify());
  CHECK(std::fabs(result.gain - std::sqrt(0.4)) < 1e-12);
  CHECK(std::fabs(result.h_limit_achieved - 0.2) / 0.2 < 1e-12);
  CHECK(result.h_target == 0.2);
}

TEST_CASE("target zero gives the zero filter") {
  const auto result = calibrate_gain(Graphon::constant(0.5),
                                     PolyFilter::make({1.0}), 0.0, no_verify());
  CHECK(result.gain == 0.0);
  CHECK(result.h_limit_achieved == 0.0);
}

TEST_CASE("unreachable target raises") {
  CHECK_THROWS_AS(calibrate_gain(Graphon::constant(0.0),
                                 PolyFilter::make({1.0}), 0.1, no_verify()),
                  UnreachableTargetError);
  // Filter vanishing on the degree support: f(t) = t - 0.5 on ER(0.5).
  CHECK_THROWS_AS(calibrate_gain(Graphon::constant(0.5),
                                 PolyFilter::make({-0.5, 1.0}), 0.1,
                                 no_verify()),
                  UnreachableTargetError);
  CHECK_THROWS_AS(calibrate_gain(Graphon::constant(0.5),
                                 PolyFilter::make({1.0}), -0.2, no_verify()),
                  std::invalid_argument);
}

TEST_CASE("limit scales with the square of the gain") {
  const Graphon g = Graphon::step_function({0.4, 0.6}, {{0.7, 0.2}, {0.2, 0.5}});
  const PolyFilter f = PolyFilter::make({1.0, -0.8, 0.3});
  const double unit = limit_heterophily(g, f.with_gain(1.0));
  for (double gain : {0.1, 1.9, 31.0}) {
    const double scaled = limit_heterophily(g, f.with_gain(gain));
    CHECK(std::fabs(scaled - gain * gain * unit) / scaled < 1e-12);
  }
}

TEST_CASE("calibration is idempotent") {
  const Graphon g = Graphon::constant(0.3);
  const PolyFilter f0 = PolyFilter::make({1.0, 2.0});
  const auto first = calibrate_gain(g, f0, 0.37, no_verify());
  const PolyFilter calibrated = f0.with_gain(first.gain);
  const auto second = calibrate_gain(g, calibrated, 0.37, no_verify());
  CHECK(std::fabs(second.gain / first.gain - 1.0) < 1e-12);
}

TEST_CASE("achieved limit is monotone in the target") {
  const Graphon g = Graphon::constant(0.6);
  const PolyFilter f0 = PolyFilter::make({0.5, 1.0});
  double prev = -1.0;
  for (double target : {0.0, 0.05, 0.1, 0.2, 0.4, 1.3}) {
    const auto r = calibrate_gain(g, f0, target, no_verify());
    CHECK(r.h_limit_achieved >= prev);
    prev = r.h_limit_achieved;
  }
}

TEST_CASE("calibrate_gain verification sample is reported") {
  CalibrationOptions opts;
  opts.verification_n = 400;
  opts.verification_seed = 7;
  const auto r = calibrate_gain(Graphon::constant(0.5),
                                PolyFilter::make({1.0}), 0.2, opts);
  CHECK(r.verification_n == 400);
  CHECK(r.verification_seed == 7);
  // Proposition-1 scale deviations at n=400; generous envelope.
  CHECK(std::fabs(r.h_empirical_check - 0.2) / 0.2 < 0.25);
}

TEST_CASE("generate_with_target hits the target and reproduces") {
  const auto [s, x, r] = generate_with_target(
      Graphon::constant(0.5), PolyFilter::make({1.0}), 0.2, 1000, 1000, 42);
  CHECK(s.n == 1000);
  CHECK(x.n == 1000);
  CHECK(x.d == 1000);
  CHECK(std::fabs(r.h_empirical_check - 0.2) / 0.2 < 0.1);
  CHECK(r.verification_n == 1000);
  CHECK(r.verification_seed == 42);

  const auto [s2, x2, r2] = generate_with_target(
      Graphon::constant(0.5), PolyFilter::make({1.0}), 0.2, 1000, 1000, 42);
  CHECK(s.neighbors == s2.neighbors);
  CHECK(x.values == x2.values);
  CHECK(r.h_empirical_check == r2.h_empirical_check);
}

TEST_CASE("target zero produces all-zero features") {
  const auto [s, x, r] = generate_with_target(
      Graphon::constant(0.5), PolyFilter::make({1.0}), 0.0, 50, 50, 3);
  for (double v : x.values) CHECK(v == 0.0);
  CHECK(r.h_empirical_check == 0.0);
}

TEST_CASE("pilot-mu reference calibrates against a finite sample") {
  CalibrationOptions opts = no_verify();
  opts.reference = CalibrationOptions::Reference::kPilotMu;
  opts.pilot_n = 600;
  opts.pilot_seed = 11;
  const auto pilot = calibrate_gain(Graphon::constant(0.5),
                                    PolyFilter::make({1.0}), 0.2, opts);
  const auto limit = calibrate_gain(Graphon::constant(0.5),
                                    PolyFilter::make({1.0}), 0.2, no_verify());
  CHECK(pilot.gain > 0.0);
  // mu_n of a pilot is close to, but not identical to, the limit.
  CHECK(std::fabs(pilot.gain - limit.gain) / limit.gain < 0.05);
  CHECK(pilot.gain != limit.gain);
}
