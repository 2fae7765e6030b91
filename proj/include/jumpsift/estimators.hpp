#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jumpsift/sample_path.hpp"
#include "jumpsift/threshold.hpp"

namespace jumpsift {

/// Sum of squared increments.
double realized_variance(const SamplePath& path);

/// Sum of squared increments whose square is <= r; ties are kept.
double threshold_realized_variance(const SamplePath& path, const ThresholdSpec& spec);

/// Sum of retained fourth powers divided by 3h. Uniform grids only.
double threshold_quarticity(const SamplePath& path, const ThresholdSpec& spec);

/// (pi/2) * sum_{i>=1} |dX_i| |dX_{i-1}|; needs at least two increments.
double bipower_variation(const SamplePath& path);

/// (IV_threshold - true_iv) / sqrt((2/3) * sum of retained fourth powers).
///
/// The denominator is the raw retained fourth-power sum, so the statistic is
/// scale-free without a separate 1/(3h) factor. Uniform grids only; throws
/// DegenerateStatistic when no retained increment is non-zero.
double normalized_bias(const SamplePath& path, const ThresholdSpec& spec, double true_iv);

/// One entry per interval: true where the squared increment exceeds r.
std::vector<bool> jump_indicators(const SamplePath& path, const ThresholdSpec& spec);

struct JumpSizeEstimate {
  std::size_t interval = 0;
  double size = 0.0;
};

struct EstimationReport {
  double iv_threshold = 0.0;
  std::optional<double> iq_threshold;  // absent on irregular grids
  double realized_variance = 0.0;
  std::optional<double> bipower_variation;  // absent for a single increment
  std::vector<std::size_t> flagged_intervals;
  std::vector<JumpSizeEstimate> jump_size_estimates;
  ThresholdSpec threshold_used;
  bool admissibility_warning = false;
  std::string admissibility_reason;
  std::optional<double> normalized_bias;
};

/// Computes every estimator for one path. Inadmissible thresholds are
/// evaluated anyway and flagged through admissibility_warning. When true_iv is
/// given and the grid is uniform, the normalized bias is filled in unless it
/// is degenerate.
EstimationReport estimate(const SamplePath& path, const ThresholdSpec& spec,
                          std::optional<double> true_iv = std::nullopt);

}  // namespace jumpsift
