#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumpsift/model.hpp"
#include "jumpsift/stats.hpp"
#include "jumpsift/threshold.hpp"
#include "jumpsift/time_grid.hpp"

namespace jumpsift {

struct GridSpec {
  std::size_t n = 2000;
  double horizon = 1.0;
  double jitter = 0.0;  // 0 gives a uniform grid

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ExperimentConfig {
  ModelConfig model = Model1{};
  GridSpec grid;
  std::size_t substeps = 1;
  ThresholdSpec threshold;
  std::size_t n_paths = 500;
  std::uint64_t base_seed = 42;
  unsigned parallelism = 1;  // worker threads; results do not depend on it
};

void validate(const ExperimentConfig& cfg);

/// The observation grid of an experiment. Jittered grids are drawn once from
/// base_seed and shared by all paths.
TimeGrid make_grid(const ExperimentConfig& cfg);

/// Named configurations: model{1,2,3}-{desk,paper}, diffusion-desk and
/// jump-clt-desk. Throws ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

struct PathRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double iv_threshold = 0.0;
  double true_iv = 0.0;
  double true_iq = 0.0;
  double realized_variance = 0.0;
  double bipower_variation = 0.0;
  std::optional<double> normalized_bias;
  std::size_t flagged = 0;
  std::size_t true_jump_intervals = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

struct DetectionSummary {
  std::optional<double> mean_recall;  // over paths with at least one jump interval
  std::size_t paths_with_jumps = 0;
  double mean_false_flags = 0.0;
  double mean_flagged = 0.0;
  std::optional<double> pooled_precision;
  std::optional<double> pooled_recall;
};

/// Empirical variance of (estimate - IV) / sqrt(h * IQ) for the threshold and
/// bipower estimators. Asymptotically 2 and pi^2/4 + pi - 3 under a pure diffusion.
struct EfficiencyTable {
  double threshold_variance = 0.0;
  double bipower_variance = 0.0;
  double ratio = 0.0;  // bipower / threshold
};

inline constexpr double kThresholdLimitVariance = 2.0;
double bipower_limit_variance();

struct McSummary {
  std::vector<PathRecord> records;
  std::optional<Moments> bias_moments;
  Histogram histogram;
  std::optional<double> ks_statistic;
  std::size_t excluded_paths = 0;  // no normalized bias (degenerate or irregular grid)
  DetectionSummary detection;
  std::optional<EfficiencyTable> efficiency;
  bool admissibility_warning = false;
  double mean_iv_threshold = 0.0;
  double mean_abs_iv_error = 0.0;

  std::vector<double> normalized_bias_samples() const;
};

/// Simulates cfg.n_paths paths seeded by path_seed(base_seed, index), estimates each and
/// aggregates. The result is identical for every parallelism level.
McSummary run_experiment(const ExperimentConfig& cfg);

/// Efficiency comparison under a jump-free model; throws InvalidArgument when
/// the model has jumps.
EfficiencyTable efficiency_comparison(ExperimentConfig cfg, std::size_t n_paths);

struct JumpSizeCltResult {
  std::vector<double> samples;
  double ks_statistic = 0.0;
  double sigma = 0.0;
  double intensity = 0.0;
  double horizon = 0.0;
};

/// CDF of the Poisson mixture sum_k P(N_T = k) N(0, T sigma^2 k), with the
/// k = 0 term an atom at 0. The series stops once the Poisson tail is < 1e-12.
double poisson_mixed_normal_cdf(double x, double sigma, double intensity, double horizon,
                                bool left_limit = false);

/// Per-path jump size error statistics and their KS distance to the mixed
/// normal limit. Needs constant sigma and additive compound Poisson jumps (or
/// none); other models throw Unsupported.
JumpSizeCltResult jump_size_clt_experiment(const ExperimentConfig& cfg);

/// Leading-order small-jump second moment T * eps^2 / b of a variance-gamma
/// part below eps = 2 sqrt(r(h)).
double small_jump_bias_bound(const Model3& model, const ThresholdSpec& threshold, double lag,
                             double horizon = 1.0);

}  // namespace jumpsift
