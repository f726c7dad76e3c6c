#include "heterogen/heterophily.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "heterogen/errors.hpp"
#include "heterogen/rng.hpp"

namespace heterogen {

namespace {

constexpr double kNegativeClampFloor = -1e-9;

double clamp_quadratic_form(double v, const char* what) {
  if (v < kNegativeClampFloor)
    throw NumericError(std::string(what) +
                       ": quadratic form came out negative beyond rounding");
  return v < 0.0 ? 0.0 : v;
}

void laplacian_matvec_into(const GraphSample& s, const std::vector<double>& in,
                           std::vector<double>& out) {
  const double inv_n = 1.0 / static_cast<double>(s.n);
  for (std::uint32_t i = 0; i < s.n; ++i) {
    double acc = static_cast<double>(s.degrees[i]) * in[i];
    for (std::uint32_t j : s.neighbors_of(i)) acc -= in[j];
    out[i] = acc * inv_n;
  }
}

}  // namespace

double empirical_heterophily(const GraphSample& s, const FeatureMatrix& x) {
  if (x.n != s.n)
    throw std::invalid_argument("heterophily: feature rows must equal n");
  FeatureMatrix lx = FeatureMatrix::zeros(x.n, x.d);
  rescaled_laplacian_apply(s, x, lx);
  double acc = 0.0;
  const std::size_t total = x.values.size();
  for (std::size_t t = 0; t < total; ++t) acc += x.values[t] * lx.values[t];
  return clamp_quadratic_form(acc / static_cast<double>(s.n),
                              "empirical_heterophily");
}

double empirical_heterophily_edge_sum(const GraphSample& s,
                                      const FeatureMatrix& x) {
  if (x.n != s.n)
    throw std::invalid_argument("heterophily: feature rows must equal n");
  const std::uint32_t d = x.d;
  double acc = 0.0;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    const double* xi = x.row(i);
    for (std::uint32_t j : s.neighbors_of(i)) {
      if (j <= i) continue;  // each unordered edge once
      const double* xj = x.row(j);
      double e = 0.0;
      for (std::uint32_t c = 0; c < d; ++c) {
        const double diff = xi[c] - xj[c];
        e += diff * diff;
      }
      acc += e;
    }
  }
  const double n = static_cast<double>(s.n);
  return acc / (n * n);
}

std::vector<double> laplacian_power_traces(const GraphSample& s,
                                           unsigned max_power) {
  const std::uint32_t n = s.n;
  std::vector<double> traces(max_power + 1, 0.0);
  traces[0] = static_cast<double>(n);
  if (max_power == 0) return traces;

  // Tr(L^m) = sum_i <L^a e_i, L^b e_i> with a+b=m, so chains only need to
  // reach ceil(max_power/2).
  const unsigned q = (max_power + 1) / 2;
  std::vector<std::vector<double>> chain(q + 1,
                                         std::vector<double>(n, 0.0));
  for (std::uint32_t i = 0; i < n; ++i) {
    std::fill(chain[0].begin(), chain[0].end(), 0.0);
    chain[0][i] = 1.0;
    for (unsigned k = 1; k <= q; ++k)
      laplacian_matvec_into(s, chain[k - 1], chain[k]);
    for (unsigned m = 1; m <= max_power; ++m) {
      const unsigned a = m / 2;
      const unsigned b = m - a;
      const auto& wa = chain[a];
      const auto& wb = chain[b];
      double dot = 0.0;
      for (std::uint32_t r = 0; r < n; ++r) dot += wa[r] * wb[r];
      traces[m] += dot;
    }
  }
  return traces;
}

double expected_heterophily_trace(const GraphSample& s, const PolyFilter& f) {
  const std::vector<double> p = f.heterophily_polynomial();
  const unsigned max_power = static_cast<unsigned>(p.size() - 1);
  const std::vector<double> traces = laplacian_power_traces(s, max_power);
  double acc = 0.0;
  for (unsigned m = 0; m <= max_power; ++m) acc += p[m] * traces[m];
  return clamp_quadratic_form(acc / static_cast<double>(s.n),
                              "expected_heterophily_trace");
}

double expected_heterophily_trace_estimate(const GraphSample& s,
                                           const PolyFilter& f, int probes,
                                           std::uint64_t seed) {
  if (probes < 1)
    throw std::invalid_argument("trace estimate: need >= 1 probe");
  const std::vector<double> p = f.heterophily_polynomial();
  const unsigned max_power = static_cast<unsigned>(p.size() - 1);
  const unsigned q = (max_power + 1) / 2;
  const std::uint32_t n = s.n;

  Rng rng(derive_seed(seed, {kProbeStream}));
  std::vector<std::vector<double>> chain(q + 1, std::vector<double>(n, 0.0));
  double acc = 0.0;
  for (int t = 0; t < probes; ++t) {
    for (std::uint32_t i = 0; i < n; ++i) chain[0][i] = rng.sign();
    for (unsigned k = 1; k <= q; ++k)
      laplacian_matvec_into(s, chain[k - 1], chain[k]);
    double probe_value = p[0] * static_cast<double>(n);
    for (unsigned m = 1; m <= max_power; ++m) {
      if (p[m] == 0.0) continue;
      const auto& wa = chain[m / 2];
      const auto& wb = chain[m - m / 2];
      double dot = 0.0;
      for (std::uint32_t r = 0; r < n; ++r) dot += wa[r] * wb[r];
      probe_value += p[m] * dot;
    }
    acc += probe_value;
  }
  return acc / static_cast<double>(probes) / static_cast<double>(n);
}

std::vector<double> laplacian_eigenvalues(const GraphSample& s,
                                          std::uint32_t cap) {
  if (s.n > cap)
    throw std::invalid_argument(
        "dense eigensolver refused: n exceeds the cap (" +
        std::to_string(cap) +
        "); use expected_heterophily_trace at this scale");
  const std::uint32_t n = s.n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    m(i, i) = static_cast<double>(s.degrees[i]) * inv_n;
    for (std::uint32_t j : s.neighbors_of(i)) m(i, j) = -inv_n;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("dense eigensolver failed to converge");

  std::vector<double> lambda(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
  for (double v : lambda)
    if (v < -1e-9 || v > 2.0 + 1e-9)
      throw NumericError("rescaled Laplacian eigenvalue outside [0,2]");
  return lambda;
}

double expected_heterophily_eigen(const GraphSample& s, const PolyFilter& f,
                                  std::uint32_t cap) {
  const std::vector<double> lambda = laplacian_eigenvalues(s, cap);
  double acc = 0.0;
  for (double v : lambda) {
    const double fv = f.evaluate(v);
    acc += v * fv * fv;
  }
  return clamp_quadratic_form(acc / static_cast<double>(s.n),
                              "expected_heterophily_eigen");
}

double spectral_moment(const GraphSample& s, unsigned m) {
  if (m == 0)
    throw std::invalid_argument("spectral_moment: m must be >= 1");
  const std::vector<double> traces = laplacian_power_traces(s, m);
  return traces[m] / static_cast<double>(s.n);
}

double degree_moment(const GraphSample& s, unsigned m) {
  if (m == 0)
    throw std::invalid_argument("degree_moment: m must be >= 1");
  const double n = static_cast<double>(s.n);
  double acc = 0.0;
  for (std::uint32_t i = 0; i < s.n; ++i)
    acc += std::pow(static_cast<double>(s.degrees[i]) / n,
                    static_cast<double>(m));
  return acc / n;
}

}  // namespace heterogen
