#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "jumpsift/time_grid.hpp"

namespace jumpsift {

enum class JumpSource { finite_activity, ia_large, ia_small_aggregate };

std::string_view to_string(JumpSource source);
JumpSource jump_source_from_string(std::string_view text);

struct JumpEvent {
  double time = 0.0;  // in (0, T]
  double size = 0.0;
  JumpSource source = JumpSource::finite_activity;
};

/// sigma^2 at the left end of every simulation substep. Observation interval i
/// owns entries [i * refinement, (i + 1) * refinement), each of length lag(i) / refinement.
struct SpotVariancePath {
  std::vector<double> values;
  std::size_t refinement = 1;
};

struct GroundTruth {
  SpotVariancePath spot_variance;
  std::vector<JumpEvent> jumps;
  std::vector<double> continuous_part;  // X_0(t_i), one per grid time
  std::vector<double> drift_integral;   // int a_s ds over each interval
};

struct SamplePath {
  TimeGrid grid;
  std::vector<double> observations;  // X(t_i), one per grid time
  std::optional<GroundTruth> truth;

  /// Observations-only path; throws InvalidArgument on size mismatch or
  /// non-finite values.
  static SamplePath observed(TimeGrid grid, std::vector<double> observations);

  /// Path starting at 0 with the given increments on a uniform grid over [0, horizon].
  static SamplePath from_increments(const std::vector<double>& increments, double horizon = 1.0);

  std::vector<double> increments() const;
};

/// Adds `size` to every observation at or after `time` (and records the event
/// when ground truth is present).
void inject_jump(SamplePath& path, double time, double size);

/// Relabels variance-gamma aggregate increments whose magnitude exceeds `cut`
/// as ia_large.
void label_large_jumps(GroundTruth& truth, double cut);

}  // namespace jumpsift
