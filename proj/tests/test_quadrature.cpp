#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "heterogen/quadrature.hpp"

using namespace heterogen;

TEST_CASE("nodes ascend inside (0,1) and weights sum to 1") {
  for (int n : {1, 2, 7, 64, 256}) {
    const GaussLegendre rule(n);
    REQUIRE(rule.nodes().size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(rule.nodes()[i] > prev);
      CHECK(rule.nodes()[i] < 1.0);
      CHECK(rule.weights()[i] > 0.0);
      prev = rule.nodes()[i];
      wsum += rule.weights()[i];
    }
    CHECK(std::fabs(wsum - 1.0) < 1e-14);
  }
}

TEST_CASE("degree 2n-1 polynomials integrate exactly") {
  // n-node Gauss-Legendre is exact up to degree 2n-1: with 4 nodes,
  // int_0^1 x^7 dx = 1/8.
  const GaussLegendre rule(4);
  const double got = rule.integrate01([](double x) { return std::pow(x, 7); });
  CHECK(std::fabs(got - 0.125) < 1e-14);

  // Degree 8 must NOT be exact with 4 nodes (sanity that the rule is
  // really the 4-point one).
  const double d8 = rule.integrate01([](double x) { return std::pow(x, 8); });
  CHECK(std::fabs(d8 - 1.0 / 9.0) > 1e-12);
}

TEST_CASE("smooth integrand converges fast") {
  const GaussLegendre rule(16);
  const double got = rule.integrate01([](double x) { return std::exp(x); });
  CHECK(std::fabs(got - (std::exp(1.0) - 1.0)) < 1e-13);
}

TEST_CASE("cached tables are shared") {
  const auto& a = GaussLegendre::cached(256);
  const auto& b = GaussLegendre::cached(256);
  CHECK(&a == &b);
  CHECK(a.nodes().size() == 256);
}

TEST_CASE("invalid node count is rejected") {
  CHECK_THROWS_AS(GaussLegendre(0), std::invalid_argument);
}
