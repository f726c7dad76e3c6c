#include "heterogen/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "heterogen/quadrature.hpp"
#include "heterogen/rng.hpp"

namespace heterogen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(what) + " must lie in [0,1]");
}

double get_param(const KernelParams& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument(std::string("kernel parameter '") + key +
                                "' missing");
  if (!std::isfinite(it->second))
    throw std::invalid_argument(std::string("kernel parameter '") + key +
                                "' must be finite");
  return it->second;
}

double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t)));
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// --- kernel registry ------------------------------------------------------

double product_eval(double x, double y, const KernelParams&) { return x * y; }
double product_degree(double x, const KernelParams&) { return 0.5 * x; }
double product_lipschitz(const KernelParams&) { return 1.0; }

double logistic_eval(double x, double y, const KernelParams& p) {
  return sigmoid(p.at("c") * (x + y));
}
double logistic_degree(double x, const KernelParams& p) {
  const double c = p.at("c");
  if (c == 0.0) return 0.5;
  return (softplus(c * (x + 1.0)) - softplus(c * x)) / c;
}
double logistic_lipschitz(const KernelParams& p) {
  return std::fabs(p.at("c")) / 4.0;
}
void logistic_validate(const KernelParams& p) { (void)get_param(p, "c"); }

// Registered kernels are smooth on the unit square; the degree-function
// quadrature relies on that.
constexpr ParametricKernel kKernels[] = {
    {"product", product_eval, product_degree, product_lipschitz, nullptr},
    {"logistic_sum", logistic_eval, logistic_degree, logistic_lipschitz,
     logistic_validate},
};

}  // namespace

const ParametricKernel* find_kernel(const std::string& id) {
  for (const auto& k : kKernels)
    if (id == k.id) return &k;
  return nullptr;
}

std::vector<std::string> kernel_ids() {
  std::vector<std::string> ids;
  for (const auto& k : kKernels) ids.emplace_back(k.id);
  return ids;
}

// --- construction ----------------------------------------------------------

Graphon Graphon::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("constant graphon: p must lie in [0,1]");
  Graphon g;
  g.family_ = GraphonFamily::kConstant;
  g.p_ = p;
  g.lipschitz_bound_ = 0.0;
  return g;
}

Graphon Graphon::step_function(std::vector<double> block_fractions,
                               std::vector<std::vector<double>> prob_matrix) {
  const std::size_t r = block_fractions.size();
  if (r == 0)
    throw std::invalid_argument("step graphon: need at least one block");
  double total = 0.0;
  for (double a : block_fractions) {
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("step graphon: block fractions must be >= 0");
    total += a;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument(
        "step graphon: block fractions must sum to 1 (within 1e-12)");
  if (prob_matrix.size() != r)
    throw std::invalid_argument("step graphon: prob matrix must be r x r");
  for (std::size_t i = 0; i < r; ++i) {
    if (prob_matrix[i].size() != r)
      throw std::invalid_argument("step graphon: prob matrix must be r x r");
    for (std::size_t j = 0; j < r; ++j) {
      const double v = prob_matrix[i][j];
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(
            "step graphon: probabilities must lie in [0,1]");
      if (prob_matrix[i][j] != prob_matrix[j][i])
        throw std::invalid_argument("step graphon: prob matrix must be symmetric");
    }
  }

  Graphon g;
  g.family_ = GraphonFamily::kStepFunction;
  g.alpha_ = std::move(block_fractions);
  g.prob_ = std::move(prob_matrix);
  g.alpha_cumulative_.resize(r);
  double acc = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    acc += g.alpha_[i];
    g.alpha_cumulative_[i] = acc;
  }
  g.block_degrees_.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < r; ++j) d += g.alpha_[j] * g.prob_[i][j];
    g.block_degrees_[i] = d;
  }
  // Discontinuous at block boundaries: no finite Lipschitz constant.
  g.lipschitz_bound_ = kInf;
  return g;
}

Graphon Graphon::parametric(const std::string& kernel_id,
                            const KernelParams& params) {
  const ParametricKernel* k = find_kernel(kernel_id);
  if (k == nullptr)
    throw std::invalid_argument("unknown parametric kernel '" + kernel_id + "'");
  if (k->validate != nullptr) k->validate(params);

  Graphon g;
  g.family_ = GraphonFamily::kParametric;
  g.kernel_id_ = kernel_id;
  g.params_ = params;
  g.kernel_ = k;
  g.lipschitz_bound_ = k->lipschitz(params);

  // Range and symmetry check on a 33x33 grid.
  constexpr int kGrid = 33;
  for (int a = 0; a < kGrid; ++a) {
    const double x = static_cast<double>(a) / (kGrid - 1);
    for (int b = a; b < kGrid; ++b) {
      const double y = static_cast<double>(b) / (kGrid - 1);
      const double w = k->evaluate(x, y, params);
      if (!(w >= 0.0 && w <= 1.0))
        throw std::invalid_argument("parametric kernel '" + kernel_id +
                                    "' leaves [0,1] on the unit square");
      if (std::fabs(w - k->evaluate(y, x, params)) > 1e-12)
        throw std::invalid_argument("parametric kernel '" + kernel_id +
                                    "' is not symmetric");
    }
  }
  return g;
}

bool Graphon::lipschitz_applicable() const {
  return std::isfinite(lipschitz_bound_);
}

// --- accessors --------------------------------------------------------------

double Graphon::constant_p() const {
  if (family_ != GraphonFamily::kConstant)
    throw std::logic_error("not a constant graphon");
  return p_;
}

const std::vector<double>& Graphon::block_fractions() const {
  if (family_ != GraphonFamily::kStepFunction)
    throw std::logic_error("not a step-function graphon");
  return alpha_;
}

const std::vector<std::vector<double>>& Graphon::prob_matrix() const {
  if (family_ != GraphonFamily::kStepFunction)
    throw std::logic_error("not a step-function graphon");
  return prob_;
}

const std::vector<double>& Graphon::block_degrees() const {
  if (family_ != GraphonFamily::kStepFunction)
    throw std::logic_error("not a step-function graphon");
  return block_degrees_;
}

const std::string& Graphon::kernel_id() const {
  if (family_ != GraphonFamily::kParametric)
    throw std::logic_error("not a parametric graphon");
  return kernel_id_;
}

const KernelParams& Graphon::kernel_params() const {
  if (family_ != GraphonFamily::kParametric)
    throw std::logic_error("not a parametric graphon");
  return params_;
}

std::size_t Graphon::block_of(double x) const {
  // Blocks are right-open intervals; the last block also contains x=1.
  auto it = std::upper_bound(alpha_cumulative_.begin(),
                             alpha_cumulative_.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - alpha_cumulative_.begin());
  return std::min(idx, alpha_.size() - 1);
}

// --- evaluation --------------------------------------------------------------

double Graphon::evaluate(double x, double y) const {
  check_unit(x, "x");
  check_unit(y, "y");
  switch (family_) {
    case GraphonFamily::kConstant:
      return p_;
    case GraphonFamily::kStepFunction:
      return prob_[block_of(x)][block_of(y)];
    case GraphonFamily::kParametric:
      return kernel_->evaluate(x, y, params_);
  }
  throw std::logic_error("unreachable");
}

double Graphon::degree_function(double x, int quadrature_nodes) const {
  check_unit(x, "x");
  switch (family_) {
    case GraphonFamily::kConstant:
      return p_;
    case GraphonFamily::kStepFunction:
      return block_degrees_[block_of(x)];
    case GraphonFamily::kParametric: {
      const auto& rule = GaussLegendre::cached(quadrature_nodes);
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes().size(); ++i)
        acc += rule.weights()[i] * kernel_->evaluate(x, rule.nodes()[i], params_);
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

std::optional<double> Graphon::closed_form_degree(double x) const {
  if (family_ != GraphonFamily::kParametric || kernel_->degree == nullptr)
    return std::nullopt;
  check_unit(x, "x");
  return kernel_->degree(x, params_);
}

double limit_heterophily(const Graphon& g, const PolyFilter& f,
                         int quadrature_nodes) {
  switch (g.family()) {
    case GraphonFamily::kConstant: {
      const double p = g.constant_p();
      const double fp = f.evaluate(p);
      return p * fp * fp;
    }
    case GraphonFamily::kStepFunction: {
      const auto& alpha = g.block_fractions();
      const auto& delta = g.block_degrees();
      double acc = 0.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double fd = f.evaluate(delta[i]);
        acc += alpha[i] * delta[i] * fd * fd;
      }
      return acc;
    }
    case GraphonFamily::kParametric: {
      const auto& rule = GaussLegendre::cached(quadrature_nodes);
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
        const double d = g.degree_function(rule.nodes()[i]);
        const double fd = f.evaluate(d);
        acc += rule.weights()[i] * d * fd * fd;
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

// --- sampling ----------------------------------------------------------------

namespace {

GraphSample build_csr(std::uint32_t n,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                      std::vector<double> latents, std::uint64_t seed) {
  GraphSample s;
  s.n = n;
  s.latents = std::move(latents);
  s.seed = seed;
  s.degrees.assign(n, 0);
  for (const auto& [u, v] : edges) {
    s.degrees[u]++;
    s.degrees[v]++;
  }
  s.offsets.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    s.offsets[i + 1] = s.offsets[i] + s.degrees[i];
  s.neighbors.resize(s.offsets[n]);
  std::vector<std::uint64_t> cursor(s.offsets.begin(), s.offsets.end() - 1);
  // Edges arrive in lexicographic (u,v) order, which fills every CSR row
  // in ascending order without a sort pass.
  for (const auto& [u, v] : edges) {
    s.neighbors[cursor[u]++] = v;
    s.neighbors[cursor[v]++] = u;
  }
  return s;
}

}  // namespace

GraphSample sample_graph(const Graphon& g, std::uint32_t n,
                         std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_graph: n must be >= 1");

  Rng rng(seed);
  std::vector<double> latents(n);
  for (auto& u : latents) u = rng.uniform01();

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  // One uniform draw per pair regardless of the family, so all families
  // share the same stream layout.
  switch (g.family()) {
    case GraphonFamily::kConstant: {
      const double p = g.constant_p();
      for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
          if (rng.uniform01() < p) edges.emplace_back(i, j);
      break;
    }
    case GraphonFamily::kStepFunction: {
      std::vector<std::uint32_t> block(n);
      for (std::uint32_t i = 0; i < n; ++i)
        block[i] = static_cast<std::uint32_t>(g.block_of(latents[i]));
      const auto& P = g.prob_matrix();
      for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
          if (rng.uniform01() < P[block[i]][block[j]]) edges.emplace_back(i, j);
      break;
    }
    case GraphonFamily::kParametric: {
      for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
          if (rng.uniform01() < g.evaluate(latents[i], latents[j]))
            edges.emplace_back(i, j);
      break;
    }
  }

  return build_csr(n, edges, std::move(latents), seed);
}

GraphSample graph_from_edges(
    std::uint32_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  if (n == 0) throw std::invalid_argument("graph_from_edges: n must be >= 1");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> normalized;
  normalized.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u == v)
      throw std::invalid_argument("graph_from_edges: self-loops not allowed");
    if (u >= n || v >= n)
      throw std::invalid_argument("graph_from_edges: node id out of range");
    normalized.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(normalized.begin(), normalized.end());
  if (std::adjacent_find(normalized.begin(), normalized.end()) !=
      normalized.end())
    throw std::invalid_argument("graph_from_edges: duplicate edge");
  return build_csr(n, normalized, {}, 0);
}

double max_degree_deviation(const Graphon& g, const GraphSample& s) {
  if (!s.has_latents())
    throw std::invalid_argument(
        "max_degree_deviation: sample has no latent coordinates");
  const double n = static_cast<double>(s.n);
  double worst = 0.0;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    const double dev =
        std::fabs(static_cast<double>(s.degrees[i]) / n -
                  g.degree_function(s.latents[i]));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace heterogen
