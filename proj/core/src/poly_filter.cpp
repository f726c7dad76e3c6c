#include "heterogen/poly_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace heterogen {

PolyFilter PolyFilter::make(std::vector<double> coeffs, double gain) {
  if (coeffs.empty())
    throw std::invalid_argument("filter needs at least one coefficient");
  for (double a : coeffs)
    if (!std::isfinite(a))
      throw std::invalid_argument("filter coefficients must be finite");
  if (!std::isfinite(gain))
    throw std::invalid_argument("filter gain must be finite");
  return {std::move(coeffs), gain};
}

double PolyFilter::evaluate_shape(double lambda) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * lambda + coeffs[k];
  return acc;
}

double PolyFilter::evaluate(double lambda) const {
  return gain * evaluate_shape(lambda);
}

std::vector<double> PolyFilter::heterophily_polynomial() const {
  const std::size_t K = coeffs.size();
  // (gain*f)^2 by convolution, then shift by one power for the lambda factor.
  std::vector<double> p(2 * K, 0.0);
  const double g2 = gain * gain;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j)
      p[i + j + 1] += g2 * coeffs[i] * coeffs[j];
  return p;  // p[0] = 0, degree 2K-1
}

}  // namespace heterogen
