#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heterogen/features.hpp"
#include "heterogen/graphon.hpp"
#include "heterogen/poly_filter.hpp"

namespace heterogen {

inline constexpr std::uint32_t kEigensolverCap = 4000;

// h = (1/n) Tr(L_n X X^T), computed column-wise through matvecs. Tiny
// negative rounding (above -1e-9) clamps to 0; anything below raises.
double empirical_heterophily(const GraphSample& s, const FeatureMatrix& x);

// Same quantity through the edge sum (1/n^2) sum_{(i,j) in E, i<j}
// ||X_i - X_j||^2; equals the trace form via L = B^T B.
double empirical_heterophily_edge_sum(const GraphSample& s,
                                      const FeatureMatrix& x);

// Tr(L^m) for m = 0..max_power, exact via per-basis-vector matvec chains
// (inner products of half-length chains; no eigendecomposition).
std::vector<double> laplacian_power_traces(const GraphSample& s,
                                           unsigned max_power);

// mu_n = (1/n) Tr(f(L) L f(L)) = (1/n) Tr(P(L)) with P(t) = t f(t)^2,
// exact trace route.
double expected_heterophily_trace(const GraphSample& s, const PolyFilter& f);

// Hutchinson estimate of mu_n with Rademacher probes. Approximate; only
// worth it for n well beyond the exact route's comfort zone.
double expected_heterophily_trace_estimate(const GraphSample& s,
                                           const PolyFilter& f, int probes,
                                           std::uint64_t seed);

// Eigenvalues of L_n = (D-A)/n from a dense symmetric solve, ascending.
// Every eigenvalue is checked against [-1e-9, 2+1e-9]. Refuses n beyond
// the cap; use expected_heterophily_trace instead at that scale.
std::vector<double> laplacian_eigenvalues(
    const GraphSample& s, std::uint32_t cap = kEigensolverCap);

// mu_n = (1/n) sum_i lambda_i f(lambda_i)^2 via the dense eigensolver.
double expected_heterophily_eigen(const GraphSample& s, const PolyFilter& f,
                                  std::uint32_t cap = kEigensolverCap);

// (1/n) sum_i lambda_i^m = (1/n^{m+1}) Tr((D-A)^m), trace-of-power route.
double spectral_moment(const GraphSample& s, unsigned m);

// (1/n) sum_i (d_i/n)^m.
double degree_moment(const GraphSample& s, unsigned m);

struct HeterophilyReport {
  double h_empirical = 0.0;
  std::optional<double> mu_n;
  std::optional<double> h_limit;
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint64_t seed_graph = 0;
  std::uint64_t seed_features = 0;
};

}  // namespace heterogen
