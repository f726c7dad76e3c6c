#include "heterogen/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace heterogen {

GaussLegendre::GaussLegendre(int num_nodes) {
  if (num_nodes < 1) throw std::invalid_argument("quadrature: need >= 1 node");
  const int n = num_nodes;
  nodes_.resize(n);
  weights_.resize(n);

  // Roots of P_n on [-1,1] by Newton iteration, then mapped to [0,1].
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::fabs(z - z1) > 1e-15);

    const double w = 1.0 / ((1.0 - z * z) * pp * pp);  // half-interval weight
    nodes_[i] = 0.5 * (1.0 - z);
    nodes_[n - 1 - i] = 0.5 * (1.0 + z);
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

const GaussLegendre& GaussLegendre::cached(int num_nodes) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(num_nodes);
  if (it == tables.end())
    it = tables.emplace(num_nodes, GaussLegendre(num_nodes)).first;
  return it->second;
}

double GaussLegendre::integrate01(
    const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    acc += weights_[i] * f(nodes_[i]);
  return acc;
}

}  // namespace heterogen
