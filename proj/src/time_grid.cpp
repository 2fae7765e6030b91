#include "jumpsift/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumpsift/errors.hpp"
#include "jumpsift/rng.hpp"

namespace jumpsift {

namespace {

std::vector<double> equispaced(std::size_t n, double horizon) {
  std::vector<double> times(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    times[i] = horizon * static_cast<double>(i) / static_cast<double>(n);
  }
  times[n] = horizon;
  return times;
}

void require_size(std::size_t n, double horizon) {
  if (n < 1) throw InvalidArgument("time grid needs n >= 1 intervals");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("time grid needs a finite horizon T > 0");
  }
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times, bool uniform)
    : times_(std::move(times)), uniform_(uniform) {
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) max_lag_ = std::max(max_lag_, lag(i));
}

TimeGrid TimeGrid::uniform(std::size_t n, double horizon) {
  require_size(n, horizon);
  TimeGrid grid(equispaced(n, horizon), true);
  grid.max_lag_ = horizon / static_cast<double>(n);
  return grid;
}

TimeGrid TimeGrid::irregular(std::size_t n, double horizon, double jitter, std::uint64_t seed) {
  require_size(n, horizon);
  if (!(jitter >= 0.0) || !(jitter < 1.0)) {
    throw InvalidArgument("jitter must lie in [0, 1), got " + std::to_string(jitter));
  }
  if (jitter == 0.0) return uniform(n, horizon);
  auto times = equispaced(n, horizon);
  const double half_width = jitter * (horizon / static_cast<double>(n)) / 2.0;
  Rng rng(seed);
  for (std::size_t i = 1; i < n; ++i) times[i] += half_width * (2.0 * rng.uniform() - 1.0);
  return TimeGrid(std::move(times), false);
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
  if (times.size() < 2) throw InvalidArgument("time grid needs at least two times");
  if (times.front() != 0.0) throw InvalidArgument("time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !(times[i] > times[i - 1])) {
      throw InvalidArgument("time grid must be strictly increasing (index " + std::to_string(i) +
                            ")");
    }
  }
  const double nominal = times.back() / static_cast<double>(times.size() - 1);
  bool uniform = true;
  for (std::size_t i = 1; i < times.size() && uniform; ++i) {
    uniform = std::abs((times[i] - times[i - 1]) - nominal) <= 1e-12 * nominal;
  }
  TimeGrid grid(std::move(times), uniform);
  if (uniform) grid.max_lag_ = nominal;
  return grid;
}

std::size_t TimeGrid::interval_containing(double t) const {
  if (!(t > 0.0) || t > horizon()) {
    throw InvalidArgument("time " + std::to_string(t) + " lies outside (0, T]");
  }
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

}  // namespace jumpsift
