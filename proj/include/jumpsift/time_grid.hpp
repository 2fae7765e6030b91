#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jumpsift {

/// Observation times 0 = t_0 < t_1 < ... < t_n = T.
///
/// Interval i (0-based) is (t_i, t_{i+1}]; lag(i) is its length and
/// max_lag() the largest lag, which plays the role of h on irregular grids.
class TimeGrid {
 public:
  static TimeGrid uniform(std::size_t n, double horizon);

  /// Interior times are moved by jitter * (T/n) / 2 * U(-1, 1); endpoints fixed.
  static TimeGrid irregular(std::size_t n, double horizon, double jitter, std::uint64_t seed);

  /// Validates ordering and t_0 = 0. The grid counts as uniform when all lags
  /// agree to 1e-12 relative.
  static TimeGrid from_times(std::vector<double> times);

  std::span<const double> times() const { return times_; }
  std::size_t intervals() const { return times_.size() - 1; }
  double horizon() const { return times_.back(); }
  double max_lag() const { return max_lag_; }
  double lag(std::size_t interval) const { return times_[interval + 1] - times_[interval]; }
  bool is_uniform() const { return uniform_; }

  /// Interval index whose half-open span (t_i, t_{i+1}] contains t; t must lie in (0, T].
  std::size_t interval_containing(double t) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  TimeGrid(std::vector<double> times, bool uniform);

  std::vector<double> times_;
  double max_lag_ = 0.0;
  bool uniform_ = false;
};

}  // namespace jumpsift
