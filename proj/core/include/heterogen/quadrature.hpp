#pragma once

#include <functional>
#include <vector>

namespace heterogen {

// Gauss-Legendre rule on [0,1]. Tables are computed once per node count
// and cached; nodes come from Newton iteration on the Legendre recurrence.
class GaussLegendre {
 public:
  explicit GaussLegendre(int num_nodes);

  // Shared cached table for a node count.
  static const GaussLegendre& cached(int num_nodes);

  double integrate01(const std::function<double(double)>& f) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> nodes_;    // in (0,1), ascending
  std::vector<double> weights_;  // sum to 1
};

inline constexpr int kDegreeQuadratureNodes = 256;
inline constexpr int kLimitQuadratureNodes = 1024;

}  // namespace heterogen
