#include "jumpsift/jump_detection.hpp"

#include <cmath>

#include "jumpsift/errors.hpp"
#include "jumpsift/estimators.hpp"

namespace jumpsift {

std::optional<double> DetectionMatch::recall() const {
  const std::size_t total = true_positives + false_negatives;
  if (total == 0) return std::nullopt;
  return static_cast<double>(true_positives) / static_cast<double>(total);
}

std::optional<double> DetectionMatch::precision() const {
  const std::size_t total = true_positives + false_positives;
  if (total == 0) return std::nullopt;
  return static_cast<double>(true_positives) / static_cast<double>(total);
}

std::vector<std::size_t> JumpDetectionResult::flagged() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    if (indicators[i]) out.push_back(i);
  }
  return out;
}

bool counts_as_jump(const JumpEvent& event) {
  return event.source == JumpSource::finite_activity || event.source == JumpSource::ia_large;
}

namespace {

// Per-interval (event count, summed size) of the true jumps.
struct IntervalJumps {
  std::vector<std::size_t> count;
  std::vector<double> total;
};

IntervalJumps bin_jumps(const TimeGrid& grid, std::span<const JumpEvent> events,
                        bool finite_activity_only) {
  IntervalJumps bins{std::vector<std::size_t>(grid.intervals(), 0),
                     std::vector<double>(grid.intervals(), 0.0)};
  for (const auto& event : events) {
    const bool keep = finite_activity_only ? event.source == JumpSource::finite_activity
                                           : counts_as_jump(event);
    if (!keep) continue;
    const std::size_t i = grid.interval_containing(event.time);
    ++bins.count[i];
    bins.total[i] += event.size;
  }
  return bins;
}

}  // namespace

JumpDetectionResult detect_jumps(const SamplePath& path, const ThresholdSpec& spec,
                                 std::span<const JumpEvent> truth) {
  JumpDetectionResult result;
  result.indicators = jump_indicators(path, spec);
  result.estimated_sizes.assign(result.indicators.size(), 0.0);
  const auto& x = path.observations;
  for (std::size_t i = 0; i < result.indicators.size(); ++i) {
    if (result.indicators[i]) result.estimated_sizes[i] = x[i + 1] - x[i];
  }
  if (truth.empty()) return result;

  const IntervalJumps bins = bin_jumps(path.grid, truth, false);
  DetectionMatch match;
  for (std::size_t i = 0; i < result.indicators.size(); ++i) {
    const bool has_jump = bins.count[i] > 0;
    if (bins.count[i] > 1) ++match.multi_jump_intervals;
    if (result.indicators[i] && has_jump) {
      ++match.true_positives;
      const double est = result.estimated_sizes[i];
      match.size_errors.push_back({i, bins.total[i], est, est - bins.total[i]});
    } else if (result.indicators[i]) {
      ++match.false_positives;
    } else if (has_jump) {
      ++match.false_negatives;
    }
  }
  result.match = std::move(match);
  return result;
}

double jump_size_error_stat(const SamplePath& path, const JumpDetectionResult& detection) {
  if (!path.truth) throw Unsupported("jump size error statistic needs simulator ground truth");
  if (!path.grid.is_uniform()) {
    throw Unsupported("jump size error statistic is defined for equally spaced observations");
  }
  const std::size_t n = path.grid.intervals();
  if (detection.estimated_sizes.size() != n) {
    throw InvalidArgument("detection result does not match the path");
  }
  for (const auto& event : path.truth->jumps) {
    if (event.source != JumpSource::finite_activity) {
      throw Unsupported("jump size error statistic needs finite-activity ground truth");
    }
  }
  const IntervalJumps bins = bin_jumps(path.grid, path.truth->jumps, true);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += detection.estimated_sizes[i] - (bins.count[i] > 0 ? bins.total[i] : 0.0);
  }
  return std::sqrt(static_cast<double>(n)) * total;
}

}  // namespace jumpsift
