#include "jumpsift/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "jumpsift/errors.hpp"
#include "jumpsift/estimators.hpp"
#include "jumpsift/jump_detection.hpp"
#include "jumpsift/normal.hpp"
#include "jumpsift/rng.hpp"
#include "jumpsift/simulate.hpp"

namespace jumpsift {

namespace {

// Runs fn(i) for i in [0, count) on `workers` threads. fn writes only to slot
// i of its output, so results do not depend on scheduling. The exception of
// the lowest failing index is rethrown after the join.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

ExperimentConfig make_preset(ModelConfig model, std::size_t n, std::size_t paths, double beta,
                             std::size_t substeps) {
  ExperimentConfig cfg;
  cfg.model = std::move(model);
  cfg.grid = {n, 1.0, 0.0};
  cfg.substeps = substeps;
  cfg.threshold = {beta, 1.0, true};
  cfg.n_paths = paths;
  cfg.base_seed = 42;
  cfg.parallelism = 1;
  return cfg;
}

std::optional<double> variance_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  return sample_moments(xs).variance;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  validate(cfg.model);
  if (cfg.n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
  if (cfg.substeps < 1) throw InvalidArgument("substeps must be >= 1");
  if (cfg.grid.n < 1) throw InvalidArgument("grid n must be >= 1");
  if (!(cfg.grid.horizon > 0.0)) throw InvalidArgument("horizon must be > 0");
  if (!(cfg.grid.jitter >= 0.0 && cfg.grid.jitter < 1.0)) {
    throw InvalidArgument("jitter must lie in [0, 1)");
  }
  if (!std::isfinite(cfg.threshold.exponent) || !std::isfinite(cfg.threshold.scale)) {
    throw InvalidArgument("threshold parameters must be finite");
  }
}

TimeGrid make_grid(const ExperimentConfig& cfg) {
  return TimeGrid::irregular(cfg.grid.n, cfg.grid.horizon, cfg.grid.jitter, cfg.base_seed);
}

ExperimentConfig preset(const std::string& name) {
  if (name == "model1-desk") return make_preset(Model1{}, 2000, 500, 0.9, 1);
  if (name == "model1-paper") return make_preset(Model1{}, 6000, 5000, 0.9, 1);
  if (name == "model2-desk") return make_preset(Model2{}, 2000, 500, 0.9, 5);
  if (name == "model2-paper") return make_preset(Model2{}, 6000, 5000, 0.9, 5);
  if (name == "model3-desk") return make_preset(Model3{}, 2000, 500, 0.99, 1);
  if (name == "model3-paper") return make_preset(Model3{}, 6000, 5000, 0.99, 1);
  if (name == "diffusion-desk") {
    Model1 m;
    m.jump_intensity = 0.0;
    return make_preset(m, 2000, 500, 0.9, 1);
  }
  if (name == "jump-clt-desk") return make_preset(Model1{}, 2000, 500, 0.9, 1);
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"model1-desk", "model1-paper", "model2-desk",    "model2-paper",
          "model3-desk", "model3-paper", "diffusion-desk", "jump-clt-desk"};
}

double bipower_limit_variance() {
  constexpr double pi = std::numbers::pi;
  return pi * pi / 4.0 + pi - 3.0;
}

std::vector<double> McSummary::normalized_bias_samples() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (r.normalized_bias) out.push_back(*r.normalized_bias);
  }
  return out;
}

McSummary run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const TimeGrid grid = make_grid(cfg);
  const bool variance_gamma = to_components(cfg.model).jumps.kind == JumpKind::variance_gamma;
  const double large_jump_cut = 2.0 * std::sqrt(cfg.threshold(grid.max_lag()));

  McSummary summary;
  summary.records.resize(cfg.n_paths);
  parallel_for(cfg.n_paths, cfg.parallelism, [&](std::size_t index) {
    PathRecord& rec = summary.records[index];
    rec.index = index;
    rec.seed = path_seed(cfg.base_seed, index);
    SamplePath path = simulate(cfg.model, grid, cfg.substeps, rec.seed);
    if (variance_gamma) label_large_jumps(*path.truth, large_jump_cut);

    rec.true_iv = true_integrated_variance(path, 2);
    rec.true_iq = true_integrated_variance(path, 4);
    const EstimationReport report = estimate(path, cfg.threshold, rec.true_iv);
    rec.iv_threshold = report.iv_threshold;
    rec.realized_variance = report.realized_variance;
    rec.bipower_variation = report.bipower_variation.value_or(0.0);
    rec.normalized_bias = report.normalized_bias;
    rec.flagged = report.flagged_intervals.size();

    const JumpDetectionResult detection = detect_jumps(path, cfg.threshold, path.truth->jumps);
    if (detection.match) {
      rec.true_positives = detection.match->true_positives;
      rec.false_positives = detection.match->false_positives;
      rec.false_negatives = detection.match->false_negatives;
    } else {
      rec.false_positives = rec.flagged;
    }
    rec.true_jump_intervals = rec.true_positives + rec.false_negatives;
  });

  // Aggregation runs in index order after the join.
  summary.admissibility_warning = !threshold_admissible(cfg.threshold).admissible;
  const auto samples = summary.normalized_bias_samples();
  summary.excluded_paths = cfg.n_paths - samples.size();
  summary.histogram = build_histogram(samples);
  if (!samples.empty()) {
    summary.ks_statistic = ks_statistic(samples);
    if (samples.size() >= 2) {
      summary.bias_moments = sample_moments(samples);
    } else {
      summary.bias_moments = Moments{samples.front(), 0.0, std::nullopt, std::nullopt};
    }
  }

  const double h = grid.max_lag();
  std::vector<double> threshold_errors;
  std::vector<double> bipower_errors;
  double recall_sum = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double iv_sum = 0.0;
  double abs_err_sum = 0.0;
  double false_flag_sum = 0.0;
  double flagged_sum = 0.0;
  for (const auto& rec : summary.records) {
    const double scale = std::sqrt(h * rec.true_iq);
    threshold_errors.push_back((rec.iv_threshold - rec.true_iv) / scale);
    bipower_errors.push_back((rec.bipower_variation - rec.true_iv) / scale);
    iv_sum += rec.iv_threshold;
    abs_err_sum += std::abs(rec.iv_threshold - rec.true_iv);
    false_flag_sum += static_cast<double>(rec.false_positives);
    flagged_sum += static_cast<double>(rec.flagged);
    tp += rec.true_positives;
    fp += rec.false_positives;
    fn += rec.false_negatives;
    if (rec.true_jump_intervals > 0) {
      ++summary.detection.paths_with_jumps;
      recall_sum += static_cast<double>(rec.true_positives) /
                    static_cast<double>(rec.true_jump_intervals);
    }
  }
  const double paths = static_cast<double>(cfg.n_paths);
  summary.mean_iv_threshold = iv_sum / paths;
  summary.mean_abs_iv_error = abs_err_sum / paths;
  summary.detection.mean_false_flags = false_flag_sum / paths;
  summary.detection.mean_flagged = flagged_sum / paths;
  if (summary.detection.paths_with_jumps > 0) {
    summary.detection.mean_recall =
        recall_sum / static_cast<double>(summary.detection.paths_with_jumps);
  }
  if (tp + fp > 0) summary.detection.pooled_precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) summary.detection.pooled_recall = static_cast<double>(tp) / static_cast<double>(tp + fn);

  const auto tv = variance_of(threshold_errors);
  const auto bv = variance_of(bipower_errors);
  if (tv && bv && grid.intervals() >= 2) {
    summary.efficiency = EfficiencyTable{*tv, *bv, *bv / *tv};
  }
  return summary;
}

EfficiencyTable efficiency_comparison(ExperimentConfig cfg, std::size_t n_paths) {
  if (has_jumps(cfg.model)) {
    throw InvalidArgument("efficiency comparison is defined under a jump-free model");
  }
  if (n_paths < 2) throw InvalidArgument("efficiency comparison needs at least two paths");
  if (cfg.grid.n < 2) throw InvalidArgument("efficiency comparison needs n >= 2");
  cfg.n_paths = n_paths;
  McSummary summary = run_experiment(cfg);
  return *summary.efficiency;
}

double poisson_mixed_normal_cdf(double x, double sigma, double intensity, double horizon,
                                bool left_limit) {
  const double mean_count = intensity * horizon;
  const double atom = x > 0.0 || (x == 0.0 && !left_limit) ? 1.0 : 0.0;
  double weight = std::exp(-mean_count);  // P(N = 0)
  double total = weight * atom;
  double tail = 1.0 - weight;
  for (std::size_t k = 1; tail >= 1e-12; ++k) {
    weight *= mean_count / static_cast<double>(k);
    tail -= weight;
    const double sd = std::sqrt(horizon * sigma * sigma * static_cast<double>(k));
    total += weight * normal_cdf(x / sd);
    if (k > 100000) break;
  }
  return total;
}

JumpSizeCltResult jump_size_clt_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto sigma = constant_sigma(cfg.model);
  const CustomModel comp = to_components(cfg.model);
  if (!sigma || (comp.jumps.kind != JumpKind::compound_poisson &&
                 comp.jumps.kind != JumpKind::none)) {
    throw Unsupported(
        "jump size CLT experiment needs constant sigma and additive compound Poisson jumps");
  }
  const TimeGrid grid = make_grid(cfg);
  JumpSizeCltResult result;
  result.sigma = *sigma;
  result.intensity = comp.jumps.kind == JumpKind::none ? 0.0 : comp.jumps.intensity;
  result.horizon = grid.horizon();
  result.samples.resize(cfg.n_paths);
  parallel_for(cfg.n_paths, cfg.parallelism, [&](std::size_t index) {
    const SamplePath path = simulate(cfg.model, grid, cfg.substeps, path_seed(cfg.base_seed, index));
    const JumpDetectionResult detection = detect_jumps(path, cfg.threshold);
    result.samples[index] = jump_size_error_stat(path, detection);
  });
  const double s = result.sigma;
  const double lambda = result.intensity;
  const double t = result.horizon;
  result.ks_statistic = ks_statistic(
      result.samples, [=](double x) { return poisson_mixed_normal_cdf(x, s, lambda, t); },
      [=](double x) { return poisson_mixed_normal_cdf(x, s, lambda, t, true); });
  return result;
}

double small_jump_bias_bound(const Model3& model, const ThresholdSpec& threshold, double lag,
                             double horizon) {
  const double eps = 2.0 * std::sqrt(threshold(lag));
  return horizon * eps * eps / model.gamma_var;
}

}  // namespace jumpsift
