#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "heterogen/heterophily.hpp"
#include "heterogen/rng.hpp"

using namespace heterogen;

namespace {

GraphSample k2() { return graph_from_edges(2, {{0, 1}}); }

GraphSample star3() {
  return graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
}

FeatureMatrix column(std::initializer_list<double> vals) {
  FeatureMatrix x = FeatureMatrix::zeros(static_cast<std::uint32_t>(vals.size()), 1);
  std::uint32_t i = 0;
  for (double v : vals) x.at(i++, 0) = v;
  return x;
}

}  // namespace

TEST_CASE("empirical heterophily hand cases") {
  // Constant signal is in the Laplacian kernel.
  const GraphSample s = sample_graph(Graphon::constant(0.5), 20, 3);
  FeatureMatrix flat = FeatureMatrix::zeros(20, 3);
  for (std::uint32_t i = 0; i < 20; ++i)
    for (std::uint32_t c = 0; c < 3; ++c) flat.at(i, c) = 1.0 + c;
  CHECK(empirical_heterophily(s, flat) == 0.0);

  // Empty graph: L = 0.
  const GraphSample empty = sample_graph(Graphon::constant(0.0), 6, 3);
  CHECK(empirical_heterophily(empty, sample_white_features(6, 2, 5)) == 0.0);

  // K2 with X = (1,-1): (1/n) Tr((L/2) XX^T) = (1/4) x^T L x = 1.
  CHECK(empirical_heterophily(k2(), column({1.0, -1.0})) ==
        doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(empirical_heterophily(s, sample_white_features(19, 2, 5)),
                  std::invalid_argument);
}

TEST_CASE("edge-sum form hand cases") {
  CHECK(empirical_heterophily_edge_sum(k2(), column({1.0, -1.0})) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // Triangle with identical rows.
  const GraphSample tri = graph_from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  FeatureMatrix same = FeatureMatrix::zeros(3, 2);
  for (std::uint32_t i = 0; i < 3; ++i) same.at(i, 0) = 1.0;
  CHECK(empirical_heterophily_edge_sum(tri, same) == 0.0);

  // Star: three edges each contributing 1, over n^2 = 16.
  CHECK(empirical_heterophily_edge_sum(star3(), column({0.0, 1.0, 1.0, 1.0})) ==
        doctest::Approx(0.1875).epsilon(1e-14));
}

TEST_CASE("trace and edge-sum forms agree on random pairs") {
  Rng rng(2025);
  for (int t = 0; t < 30; ++t) {
    const std::uint32_t n = 20 + static_cast<std::uint32_t>(180 * rng.uniform01());
    const std::uint32_t d = 1 + static_cast<std::uint32_t>(20 * rng.uniform01());
    const double p = 0.05 + 0.9 * rng.uniform01();
    const GraphSample s = sample_graph(Graphon::constant(p), n, rng.next_u64());
    const FeatureMatrix x = sample_white_features(n, d, rng.next_u64());
    const double a = empirical_heterophily(s, x);
    const double b = empirical_heterophily_edge_sum(s, x);
    CHECK(std::fabs(a - b) / std::max(a, 1e-15) < 1e-10);
  }
}

TEST_CASE("expected heterophily trace hand cases") {
  const PolyFilter one = PolyFilter::make({1.0});
  CHECK(expected_heterophily_trace(
            sample_graph(Graphon::constant(0.0), 8, 1), one) == 0.0);
  // K2, f=1: (1/2) Tr(L/2) = 0.5.
  CHECK(expected_heterophily_trace(k2(), one) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(expected_heterophily_trace(k2(), PolyFilter::make({0.0})) == 0.0);
}

TEST_CASE("expected heterophily eigen hand cases") {
  const PolyFilter one = PolyFilter::make({1.0});
  // K2 eigenvalues {0, 1}.
  CHECK(expected_heterophily_eigen(k2(), one) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(expected_heterophily_eigen(
            sample_graph(Graphon::constant(0.0), 5, 2), one) == 0.0);

  // K4: rescaled eigenvalues {0,1,1,1}; f(t)=t gives (1/4)*3 = 0.75.
  const GraphSample k4 = sample_graph(Graphon::constant(1.0), 4, 9);
  CHECK(expected_heterophily_eigen(k4, PolyFilter::make({0.0, 1.0})) ==
        doctest::Approx(0.75).epsilon(1e-12));

  // Cap refusal points at the trace route.
  const GraphSample s = sample_graph(Graphon::constant(0.2), 30, 4);
  CHECK_THROWS_WITH_AS(expected_heterophily_eigen(s, one, /*cap=*/20),
                       doctest::Contains("expected_heterophily_trace"),
                       std::invalid_argument);
}

TEST_CASE("trace route equals eigen route on random graphs and filters") {
  Rng rng(606);
  for (int t = 0; t < 10; ++t) {
    const std::uint32_t n = 30 + static_cast<std::uint32_t>(170 * rng.uniform01());
    const double p = 0.1 + 0.8 * rng.uniform01();
    const GraphSample s = sample_graph(Graphon::constant(p), n, rng.next_u64());
    std::vector<double> coeffs(1 + static_cast<std::size_t>(4.999 * rng.uniform01()));
    for (auto& c : coeffs) c = 4.0 * rng.uniform01() - 2.0;
    const PolyFilter f = PolyFilter::make(coeffs);
    const double via_trace = expected_heterophily_trace(s, f);
    const double via_eigen = expected_heterophily_eigen(s, f);
    CHECK(std::fabs(via_trace - via_eigen) / std::max(via_eigen, 1e-15) < 1e-8);
  }
}

TEST_CASE("spectral moments") {
  // m=1: (1/n^2) sum d_i, exactly.
  const GraphSample s = sample_graph(Graphon::constant(0.5), 60, 12);
  const double expect =
      2.0 * static_cast<double>(s.num_edges()) / (60.0 * 60.0);
  CHECK(spectral_moment(s, 1) == doctest::Approx(expect).epsilon(1e-13));

  // K2: eigenvalues {0,1} -> m=2 gives 1/2.
  CHECK(spectral_moment(k2(), 2) == doctest::Approx(0.5).epsilon(1e-14));

  const GraphSample empty = sample_graph(Graphon::constant(0.0), 7, 2);
  for (unsigned m : {1u, 2u, 3u, 5u}) CHECK(spectral_moment(empty, m) == 0.0);

  CHECK_THROWS_AS(spectral_moment(k2(), 0), std::invalid_argument);
}

TEST_CASE("degree moments") {
  const GraphSample k4 = sample_graph(Graphon::constant(1.0), 4, 4);
  CHECK(degree_moment(k4, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(degree_moment(k2(), 3) == doctest::Approx(0.125).epsilon(1e-15));
  const GraphSample empty = sample_graph(Graphon::constant(0.0), 7, 2);
  CHECK(degree_moment(empty, 4) == 0.0);
}

TEST_CASE("moment identity hard bound") {
  // |spectral - degree moment| <= (2^m - 1)/n for every graph: the
  // mixed words of (D-A)^m are each bounded by n^m in trace.
  Rng rng(99);
  const std::vector<Graphon> graphons = {
      Graphon::constant(0.5),
      Graphon::step_function({0.5, 0.5}, {{0.8, 0.2}, {0.2, 0.8}}),
      Graphon::parametric("logistic_sum", {{"c", 1.5}})};
  for (const auto& g : graphons) {
    for (std::uint32_t n : {50u, 170u, 400u}) {
      const GraphSample s = sample_graph(g, n, rng.next_u64());
      for (unsigned m : {1u, 2u, 3u}) {
        const double gap =
            std::fabs(spectral_moment(s, m) - degree_moment(s, m));
        const double bound = (std::pow(2.0, m) - 1.0) / n;
        CHECK(gap <= bound);
      }
    }
  }
}

TEST_CASE("rescaled Laplacian spectrum stays in [0,2]") {
  Rng rng(314);
  const std::vector<Graphon> graphons = {
      Graphon::constant(0.9), Graphon::constant(0.1),
      Graphon::step_function({0.3, 0.7}, {{0.9, 0.1}, {0.1, 0.6}}),
      Graphon::parametric("logistic_sum", {{"c", 3.0}})};
  for (const auto& g : graphons) {
    const GraphSample s =
        sample_graph(g, 80 + static_cast<std::uint32_t>(120 * rng.uniform01()),
                     rng.next_u64());
    const auto lambda = laplacian_eigenvalues(s);
    REQUIRE(lambda.size() == s.n);
    for (double v : lambda) {
      CHECK(v >= -1e-9);
      CHECK(v <= 2.0 + 1e-9);
    }
  }
  // Complete graph: one zero, the rest at n/(n-1)... rescaled L = L/n with
  // L eigenvalues {0, n,..,n} -> {0, 1,..,1}.
  const auto lk4 = laplacian_eigenvalues(sample_graph(Graphon::constant(1.0), 4, 1));
  CHECK(lk4.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lk4.back() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mu_n is quadratic in the gain") {
  const GraphSample s = sample_graph(Graphon::constant(0.4), 90, 8);
  const PolyFilter base = PolyFilter::make({0.5, 1.0, -0.3});
  const double unit = expected_heterophily_trace(s, base.with_gain(1.0));
  for (double g : {0.5, 2.0, 7.5}) {
    const double scaled = expected_heterophily_trace(s, base.with_gain(g));
    CHECK(std::fabs(scaled - g * g * unit) / std::max(scaled, 1e-300) < 1e-12);
  }
}

TEST_CASE("nonnegativity of all heterophily quantities") {
  Rng rng(555);
  for (int t = 0; t < 10; ++t) {
    const std::uint32_t n = 20 + static_cast<std::uint32_t>(80 * rng.uniform01());
    const GraphSample s =
        sample_graph(Graphon::constant(rng.uniform01()), n, rng.next_u64());
    const FeatureMatrix x0 = sample_white_features(n, n, rng.next_u64());
    std::vector<double> coeffs = {2.0 * rng.uniform01() - 1.0,
                                  2.0 * rng.uniform01() - 1.0};
    const PolyFilter f = PolyFilter::make(coeffs);
    const FeatureMatrix x = apply_filter(f, s, x0);
    CHECK(empirical_heterophily(s, x) >= 0.0);
    CHECK(empirical_heterophily_edge_sum(s, x) >= 0.0);
    CHECK(expected_heterophily_trace(s, f) >= 0.0);
    CHECK(expected_heterophily_eigen(s, f) >= 0.0);
  }
}

TEST_CASE("Hutchinson estimate tracks the exact trace") {
  const GraphSample s = sample_graph(Graphon::constant(0.5), 300, 1234);
  const PolyFilter f = PolyFilter::make({1.0, 1.0});
  const double exact = expected_heterophily_trace(s, f);
  const double est = expected_heterophily_trace_estimate(s, f, 512, 99);
  CHECK(std::fabs(est - exact) / exact < 0.1);
  CHECK_THROWS_AS(expected_heterophily_trace_estimate(s, f, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("single-node graph is all zeros") {
  const GraphSample s = sample_graph(Graphon::constant(0.7), 1, 5);
  CHECK(s.num_edges() == 0);
  CHECK(empirical_heterophily(s, sample_white_features(1, 3, 1)) == 0.0);
  CHECK(expected_heterophily_eigen(s, PolyFilter::make({1.0})) == 0.0);
  CHECK(spectral_moment(s, 2) == 0.0);
}
