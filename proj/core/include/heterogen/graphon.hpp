#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heterogen/poly_filter.hpp"

namespace heterogen {

enum class GraphonFamily { kConstant, kStepFunction, kParametric };

using KernelParams = std::map<std::string, double>;

// Symmetric kernel W on [0,1]^2 with values in [0,1], used as a random
// graph model. Three families: Constant(p) is the Erdos-Renyi graphon,
// StepFunction is a dense SBM, Parametric is a smooth kernel from the
// registry below (validated on a grid at construction).
class Graphon {
 public:
  // Defaults to the empty graphon Constant(0).
  Graphon() = default;

  static Graphon constant(double p);
  static Graphon step_function(std::vector<double> block_fractions,
                               std::vector<std::vector<double>> prob_matrix);
  static Graphon parametric(const std::string& kernel_id,
                            const KernelParams& params = {});

  GraphonFamily family() const { return family_; }

  // Valid Lipschitz constant in the product metric. Step-function
  // graphons are discontinuous at block boundaries; they carry +inf and
  // lipschitz_applicable() == false.
  double lipschitz_bound() const { return lipschitz_bound_; }
  bool lipschitz_applicable() const;

  // W(x,y). Throws std::domain_error outside the unit square.
  double evaluate(double x, double y) const;

  // Degree function delta(x) = integral of W(x,.) over [0,1]. Closed form
  // for Constant and StepFunction; Gauss-Legendre quadrature for
  // Parametric (node count configurable, 256 by default).
  double degree_function(double x, int quadrature_nodes = 256) const;

  // Analytic delta for parametric kernels that declare one. Test oracle
  // for the quadrature path; nullopt when the kernel has no closed form.
  std::optional<double> closed_form_degree(double x) const;

  // Accessors for family-specific data (throw on family mismatch).
  double constant_p() const;
  const std::vector<double>& block_fractions() const;
  const std::vector<std::vector<double>>& prob_matrix() const;
  const std::string& kernel_id() const;
  const KernelParams& kernel_params() const;
  // Per-block degree delta_i = sum_j alpha_j P_ij for step functions.
  const std::vector<double>& block_degrees() const;
  std::size_t block_of(double x) const;

 private:
  GraphonFamily family_ = GraphonFamily::kConstant;
  double lipschitz_bound_ = 0.0;

  double p_ = 0.0;  // constant

  std::vector<double> alpha_;                  // step function
  std::vector<double> alpha_cumulative_;
  std::vector<std::vector<double>> prob_;
  std::vector<double> block_degrees_;

  std::string kernel_id_;                      // parametric
  KernelParams params_;
  const struct ParametricKernel* kernel_ = nullptr;
};

// Sampled graph with its latent coordinates retained. Adjacency is CSR
// with neighbor lists sorted ascending; degrees[i] equals the row length.
struct GraphSample {
  std::uint32_t n = 0;
  std::vector<double> latents;            // size n; empty if file-loaded
  std::vector<std::uint64_t> offsets;     // size n+1
  std::vector<std::uint32_t> neighbors;   // size 2|E|
  std::vector<std::uint32_t> degrees;     // size n
  std::uint64_t seed = 0;

  std::size_t num_edges() const { return neighbors.size() / 2; }
  std::span<const std::uint32_t> neighbors_of(std::uint32_t i) const {
    return {neighbors.data() + offsets[i],
            static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
  }
  bool has_latents() const { return latents.size() == n; }
};

// Draws latents u_1..u_n ~ Unif[0,1] in index order, then one uniform per
// unordered pair (i,j), i<j, in lexicographic order; the edge is present
// when the draw is below W(u_i,u_j). A draw is consumed for every pair,
// so the stream layout is independent of the graphon.
GraphSample sample_graph(const Graphon& g, std::uint32_t n,
                         std::uint64_t seed);

// Builds a GraphSample (without latents) from an unordered edge list.
GraphSample graph_from_edges(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// max_i |d_i/n - delta(u_i)|, the uniform degree-law diagnostic.
// Requires latents.
double max_degree_deviation(const Graphon& g, const GraphSample& s);

// Limiting heterophily integral of delta(x) f(delta(x))^2 over [0,1].
// Closed forms for Constant and StepFunction; Gauss-Legendre quadrature
// (1024 nodes by default) for Parametric.
double limit_heterophily(const Graphon& g, const PolyFilter& f,
                         int quadrature_nodes = 1024);

// Registry entry for parametric kernels.
struct ParametricKernel {
  const char* id;
  double (*evaluate)(double x, double y, const KernelParams&);
  double (*degree)(double x, const KernelParams&);  // nullptr: no closed form
  double (*lipschitz)(const KernelParams&);
  void (*validate)(const KernelParams&);            // nullptr: no params
};

const ParametricKernel* find_kernel(const std::string& id);
std::vector<std::string> kernel_ids();

}  // namespace heterogen
