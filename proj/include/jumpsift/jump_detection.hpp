#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jumpsift/sample_path.hpp"
#include "jumpsift/threshold.hpp"

namespace jumpsift {

struct JumpSizeError {
  std::size_t interval = 0;
  double true_size = 0.0;  // sum of the true jumps in the interval
  double estimated_size = 0.0;
  double error = 0.0;
};

/// Interval-level comparison against known jumps. A true jump interval is one
/// containing at least one finite_activity or ia_large event; it counts once
/// however many events it holds.
struct DetectionMatch {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t multi_jump_intervals = 0;
  std::vector<JumpSizeError> size_errors;  // one per true positive

  /// TP / (TP + FN); empty when the path has no true jump interval.
  std::optional<double> recall() const;
  std::optional<double> precision() const;
};

struct JumpDetectionResult {
  std::vector<bool> indicators;         // per interval
  std::vector<double> estimated_sizes;  // dX_i on flagged intervals, 0 elsewhere
  std::optional<DetectionMatch> match;

  std::vector<std::size_t> flagged() const;
};

/// True jumps: events that count as jumps for matching.
bool counts_as_jump(const JumpEvent& event);

/// Flags interval i when (dX_i)^2 > r and estimates its jump as dX_i. When
/// `truth` is non-empty the flags are matched against the true jump intervals.
JumpDetectionResult detect_jumps(const SamplePath& path, const ThresholdSpec& spec,
                                 std::span<const JumpEvent> truth = {});

/// sqrt(n) * sum_i (estimated_i - true_i * 1[interval i holds a jump]).
///
/// true_i is the sum of finite-activity jumps in interval i. Needs the path's
/// ground truth (Unsupported otherwise) and a uniform grid.
double jump_size_error_stat(const SamplePath& path, const JumpDetectionResult& detection);

}  // namespace jumpsift
