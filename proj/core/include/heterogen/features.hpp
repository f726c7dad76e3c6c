#pragma once

#include <cstdint>
#include <vector>

#include "heterogen/graphon.hpp"
#include "heterogen/poly_filter.hpp"

namespace heterogen {

// Dense n x d feature matrix, row-major (one row per node).
struct FeatureMatrix {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<double> values;  // size n*d

  static FeatureMatrix zeros(std::uint32_t n, std::uint32_t d);

  double& at(std::uint32_t i, std::uint32_t j) {
    return values[static_cast<std::size_t>(i) * d + j];
  }
  double at(std::uint32_t i, std::uint32_t j) const {
    return values[static_cast<std::size_t>(i) * d + j];
  }
  const double* row(std::uint32_t i) const {
    return values.data() + static_cast<std::size_t>(i) * d;
  }
  double* row(std::uint32_t i) {
    return values.data() + static_cast<std::size_t>(i) * d;
  }
};

// White Gaussian initialization X0: entries i.i.d. N(0, 1/d), i.e. rows
// e_i/sqrt(d) with e_i standard normal in R^d. Filled row-major, so the
// draw order is node-major and fully determined by the seed.
FeatureMatrix sample_white_features(std::uint32_t n, std::uint32_t d,
                                    std::uint64_t seed);

// Dimension policy d = n; satisfies d^{1/alpha} <= n <= d^alpha for every
// alpha > 1.
std::uint32_t default_dimension(std::uint32_t n, double alpha = 2.0);

// Checks an override against the proportional-regime bound. Returns true
// when d^{1/alpha} <= n <= d^alpha.
bool dimension_within_regime(std::uint32_t n, std::uint32_t d,
                             double alpha = 2.0);

// y = (D - A) v / n from the sparse adjacency. Neighbor contributions are
// accumulated in neighbor-list order, which fixes the summation order.
std::vector<double> rescaled_laplacian_matvec(const GraphSample& s,
                                              const std::vector<double>& v);

// In-place matrix form: out = (D - A) X / n, rows processed in index
// order. out must not alias x.
void rescaled_laplacian_apply(const GraphSample& s, const FeatureMatrix& x,
                              FeatureMatrix& out);

// X = gain * sum_k a_k L^k X0 by the power recurrence P_k = L P_{k-1};
// L^k is never materialized.
FeatureMatrix apply_filter(const PolyFilter& f, const GraphSample& s,
                           const FeatureMatrix& x0);

}  // namespace heterogen
