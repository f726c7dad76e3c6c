#include "heterogen/features.hpp"

#include <cmath>
#include <stdexcept>

#include "heterogen/rng.hpp"

namespace heterogen {

FeatureMatrix FeatureMatrix::zeros(std::uint32_t n, std::uint32_t d) {
  FeatureMatrix m;
  m.n = n;
  m.d = d;
  m.values.assign(static_cast<std::size_t>(n) * d, 0.0);
  return m;
}

FeatureMatrix sample_white_features(std::uint32_t n, std::uint32_t d,
                                    std::uint64_t seed) {
  if (n == 0 || d == 0)
    throw std::invalid_argument("sample_white_features: n and d must be >= 1");
  FeatureMatrix m;
  m.n = n;
  m.d = d;
  m.values.resize(static_cast<std::size_t>(n) * d);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (auto& v : m.values) v = scale * rng.gaussian();
  return m;
}

std::uint32_t default_dimension(std::uint32_t n, double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("dimension policy requires alpha > 1");
  return n;
}

bool dimension_within_regime(std::uint32_t n, std::uint32_t d, double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("dimension policy requires alpha > 1");
  const double dn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return std::pow(dd, 1.0 / alpha) <= dn && dn <= std::pow(dd, alpha);
}

std::vector<double> rescaled_laplacian_matvec(const GraphSample& s,
                                              const std::vector<double>& v) {
  if (v.size() != s.n)
    throw std::invalid_argument("matvec: vector length must equal n");
  const double inv_n = 1.0 / static_cast<double>(s.n);
  std::vector<double> out(s.n);
  for (std::uint32_t i = 0; i < s.n; ++i) {
    double acc = static_cast<double>(s.degrees[i]) * v[i];
    for (std::uint32_t j : s.neighbors_of(i)) acc -= v[j];
    out[i] = acc * inv_n;
  }
  return out;
}

void rescaled_laplacian_apply(const GraphSample& s, const FeatureMatrix& x,
                              FeatureMatrix& out) {
  if (x.n != s.n)
    throw std::invalid_argument("laplacian apply: row count must equal n");
  if (out.n != x.n || out.d != x.d || &out == &x)
    throw std::invalid_argument("laplacian apply: bad output buffer");
  const double inv_n = 1.0 / static_cast<double>(s.n);
  const std::uint32_t d = x.d;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    const double deg = static_cast<double>(s.degrees[i]);
    const double* xi = x.row(i);
    double* oi = out.row(i);
    for (std::uint32_t c = 0; c < d; ++c) oi[c] = deg * xi[c];
    for (std::uint32_t j : s.neighbors_of(i)) {
      const double* xj = x.row(j);
      for (std::uint32_t c = 0; c < d; ++c) oi[c] -= xj[c];
    }
    for (std::uint32_t c = 0; c < d; ++c) oi[c] *= inv_n;
  }
}

FeatureMatrix apply_filter(const PolyFilter& f, const GraphSample& s,
                           const FeatureMatrix& x0) {
  if (f.coeffs.empty())
    throw std::invalid_argument("apply_filter: empty filter");
  if (x0.n != s.n)
    throw std::invalid_argument("apply_filter: feature rows must equal n");

  const std::size_t total = x0.values.size();
  FeatureMatrix acc = FeatureMatrix::zeros(x0.n, x0.d);
  for (std::size_t t = 0; t < total; ++t)
    acc.values[t] = f.coeffs[0] * x0.values[t];

  // Power recurrence: power = L^k X0, accumulated with coefficient a_k.
  FeatureMatrix power = x0;
  FeatureMatrix next = FeatureMatrix::zeros(x0.n, x0.d);
  for (std::size_t k = 1; k < f.coeffs.size(); ++k) {
    rescaled_laplacian_apply(s, power, next);
    std::swap(power, next);
    const double a = f.coeffs[k];
    if (a == 0.0) continue;
    for (std::size_t t = 0; t < total; ++t)
      acc.values[t] += a * power.values[t];
  }

  if (f.gain != 1.0)
    for (auto& v : acc.values) v *= f.gain;
  return acc;
}

}  // namespace heterogen
