#pragma once

#include <cstddef>
#include <vector>

namespace heterogen {

// Polynomial spectral filter f(lambda) = gain * sum_k coeffs[k] lambda^k.
// The gain is kept as a separate scalar so calibration can rescale a
// filter shape without touching its coefficients.
struct PolyFilter {
  std::vector<double> coeffs;  // a_0 .. a_{K-1}, K >= 1
  double gain = 1.0;

  static PolyFilter make(std::vector<double> coeffs, double gain = 1.0);

  std::size_t order() const { return coeffs.size(); }  // K

  // gain * f(lambda), Horner evaluation.
  double evaluate(double lambda) const;

  // f(lambda) without the gain.
  double evaluate_shape(double lambda) const;

  PolyFilter with_gain(double g) const { return {coeffs, g}; }

  // Coefficients of P(lambda) = lambda * (gain*f)(lambda)^2, the degree
  // 2K-1 polynomial whose Laplacian trace gives the expected heterophily.
  std::vector<double> heterophily_polynomial() const;
};

}  // namespace heterogen
