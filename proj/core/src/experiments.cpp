#include "heterogen/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "heterogen/features.hpp"
#include "heterogen/heterophily.hpp"
#include "heterogen/rng.hpp"

namespace heterogen {

namespace {

// Above this size the dense eigensolver stops being the cheaper route for
// mu_n and the exact trace path takes over.
constexpr std::uint32_t kEigenRouteCap = 2000;

void validate(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty())
    throw std::invalid_argument("experiment: need at least one size");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i)
    if (cfg.sizes[i] <= cfg.sizes[i - 1])
      throw std::invalid_argument("experiment: sizes must be strictly increasing");
  if (cfg.sizes.front() == 0)
    throw std::invalid_argument("experiment: sizes must be >= 1");
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment: trials must be >= 1");
  if (cfg.filter.coeffs.empty())
    throw std::invalid_argument("experiment: filter has no coefficients");
}

struct TrialOutcome {
  double h = 0.0;
  double reference = 0.0;
};

// Runs trials 0..trials-1, collecting outcomes by trial index so the
// result is independent of worker scheduling.
std::vector<TrialOutcome> run_trials(
    unsigned threads, std::uint32_t trials,
    const std::function<TrialOutcome(std::uint32_t)>& trial_fn) {
  std::vector<TrialOutcome> out(trials);
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (workers < 1) workers = 1;
  if (workers == 1 || trials == 1) {
    for (std::uint32_t t = 0; t < trials; ++t) out[t] = trial_fn(t);
    return out;
  }

  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint32_t t = w; t < trials; t += workers)
          out[t] = trial_fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

ExperimentRow aggregate(std::uint32_t n, std::uint32_t d,
                        const std::vector<TrialOutcome>& outcomes) {
  ExperimentRow row;
  row.n = n;
  row.d = d;
  row.trials = static_cast<std::uint32_t>(outcomes.size());
  double sum_h = 0.0, sum_ref = 0.0, sum_dev = 0.0, sum_dev2 = 0.0;
  for (const auto& o : outcomes) {
    const double dev = std::fabs(o.h - o.reference);
    sum_h += o.h;
    sum_ref += o.reference;
    sum_dev += dev;
    sum_dev2 += dev * dev;
  }
  const double t = static_cast<double>(outcomes.size());
  row.mean_h = sum_h / t;
  row.reference = sum_ref / t;
  row.mean_abs_dev = sum_dev / t;
  row.std_dev = std::sqrt(
      std::max(0.0, sum_dev2 / t - (sum_dev / t) * (sum_dev / t)));
  return row;
}

TrialOutcome generate_and_measure(const ExperimentConfig& cfg, std::uint32_t n,
                                  std::uint32_t d, std::uint32_t trial,
                                  bool per_graph_mu) {
  const std::uint64_t trial_seed =
      derive_seed(cfg.base_seed, {static_cast<std::uint64_t>(n), trial});
  const GraphSample s =
      sample_graph(cfg.graphon, n, derive_seed(trial_seed, {kGraphStream}));
  const FeatureMatrix x0 =
      sample_white_features(n, d, derive_seed(trial_seed, {kFeatureStream}));
  const FeatureMatrix x = apply_filter(cfg.filter, s, x0);

  TrialOutcome o;
  o.h = empirical_heterophily(s, x);
  if (per_graph_mu)
    o.reference = n <= kEigenRouteCap
                      ? expected_heterophily_eigen(s, cfg.filter)
                      : expected_heterophily_trace(s, cfg.filter);
  return o;
}

}  // namespace

std::vector<ExperimentRow> run_concentration(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ExperimentRow> rows;
  rows.reserve(cfg.sizes.size());
  for (std::uint32_t n : cfg.sizes) {
    const std::uint32_t d = cfg.d_override != 0 ? cfg.d_override : n;
    const auto outcomes =
        run_trials(cfg.threads, cfg.trials, [&](std::uint32_t t) {
          return generate_and_measure(cfg, n, d, t, /*per_graph_mu=*/true);
        });
    rows.push_back(aggregate(n, d, outcomes));
  }
  return rows;
}

std::vector<ExperimentRow> run_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  const double h_inf = limit_heterophily(cfg.graphon, cfg.filter);
  std::vector<ExperimentRow> rows;
  rows.reserve(cfg.sizes.size());
  for (std::uint32_t n : cfg.sizes) {
    const std::uint32_t d = cfg.d_override != 0 ? cfg.d_override : n;
    auto outcomes =
        run_trials(cfg.threads, cfg.trials, [&](std::uint32_t t) {
          TrialOutcome o =
              generate_and_measure(cfg, n, d, t, /*per_graph_mu=*/false);
          o.reference = h_inf;
          return o;
        });
    ExperimentRow row = aggregate(n, d, outcomes);
    row.reference = h_inf;  // same code path, not an average
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "n,d,trials,mean_h,reference,mean_abs_dev,std_dev\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.d) + "," +
           std::to_string(r.trials) + "," + fmt_double(r.mean_h) + "," +
           fmt_double(r.reference) + "," + fmt_double(r.mean_abs_dev) + "," +
           fmt_double(r.std_dev) + "\n";
  }
  return out;
}

std::string rows_to_svg(const std::vector<ExperimentRow>& rows,
                        const std::string& title) {
  constexpr double kW = 640, kH = 480;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;

  // Log-log: deviations of exactly 0 are floored for display only.
  auto log_dev = [](double v) { return std::log10(std::max(v, 1e-16)); };

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& r : rows) {
    const double x = std::log10(static_cast<double>(r.n));
    const double y = log_dev(r.mean_abs_dev);
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  // Room for the reference line's descent.
  y_min = std::min(y_min, y_max - 0.5 * (x_max - x_min));
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  y_min -= 0.2;
  y_max += 0.2;

  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">" + title + "</text>\n";
  // Frame.
  svg += "<rect x=\"" + fmt_double(kLeft) + "\" y=\"" + fmt_double(kTop) +
         "\" width=\"" + fmt_double(plot_w) + "\" height=\"" + fmt_double(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  // y ticks at integer powers of ten.
  for (int e = static_cast<int>(std::ceil(y_min)); e <= static_cast<int>(std::floor(y_max)); ++e) {
    const double y = py(e);
    svg += "<line x1=\"" + fmt_double(kLeft - 4) + "\" y1=\"" + fmt_double(y) +
           "\" x2=\"" + fmt_double(kLeft) + "\" y2=\"" + fmt_double(y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_double(kLeft - 8) + "\" y=\"" + fmt_double(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" +
           std::to_string(e) + "</text>\n";
  }
  // x ticks at the measured sizes.
  for (const auto& r : rows) {
    const double x = px(std::log10(static_cast<double>(r.n)));
    svg += "<line x1=\"" + fmt_double(x) + "\" y1=\"" + fmt_double(kTop + plot_h) +
           "\" x2=\"" + fmt_double(x) + "\" y2=\"" + fmt_double(kTop + plot_h + 4) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_double(x) + "\" y=\"" + fmt_double(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" +
           std::to_string(r.n) + "</text>\n";
  }
  svg += "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\">n</text>\n";
  svg += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-size=\"12\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 240)\">mean |h - ref|</text>\n";

  // Reference slope -1/2 anchored at the first point.
  if (!rows.empty()) {
    const double x0 = std::log10(static_cast<double>(rows.front().n));
    const double y0 = log_dev(rows.front().mean_abs_dev);
    const double y1 = y0 - 0.5 * (x_max - x0);
    svg += "<line x1=\"" + fmt_double(px(x0)) + "\" y1=\"" + fmt_double(py(y0)) +
           "\" x2=\"" + fmt_double(px(x_max)) + "\" y2=\"" + fmt_double(py(y1)) +
           "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    svg += "<text x=\"" + fmt_double(px(x_max) - 4) + "\" y=\"" +
           fmt_double(py(y1) - 6) +
           "\" text-anchor=\"end\" font-size=\"11\" fill=\"gray\" "
           "font-family=\"sans-serif\">slope -1/2</text>\n";
  }

  // Data polyline and points.
  std::string pts;
  for (const auto& r : rows) {
    const double x = px(std::log10(static_cast<double>(r.n)));
    const double y = py(log_dev(r.mean_abs_dev));
    pts += fmt_double(x) + "," + fmt_double(y) + " ";
  }
  svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"steelblue\" "
         "stroke-width=\"1.5\"/>\n";
  for (const auto& r : rows) {
    const double x = px(std::log10(static_cast<double>(r.n)));
    const double y = py(log_dev(r.mean_abs_dev));
    svg += "<circle cx=\"" + fmt_double(x) + "\" cy=\"" + fmt_double(y) +
           "\" r=\"3.5\" fill=\"steelblue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace heterogen
