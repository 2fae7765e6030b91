#pragma once

#include <cstddef>
#include <string>

#include "jumpsift/time_grid.hpp"

namespace jumpsift {

/// Power-law truncation level r(dt) = scale * dt^exponent.
///
/// An increment is treated as diffusive when its square is <= r. On irregular
/// grids with `per_interval` set, interval i is judged against r(lag(i));
/// otherwise every interval uses r(max_lag()).
struct ThresholdSpec {
  double exponent = 0.9;
  double scale = 1.0;
  bool per_interval = true;

  double operator()(double lag) const;

  /// r for interval i of `grid`.
  double at(const TimeGrid& grid, std::size_t interval) const;

  friend bool operator==(const ThresholdSpec&, const ThresholdSpec&) = default;
};

struct Admissibility {
  bool admissible = false;
  std::string reason;
};

/// r(h) -> 0 and h log(1/h) / r(h) -> 0 as h -> 0, which for the power law
/// holds exactly when 0 < exponent < 1 and scale > 0.
Admissibility threshold_admissible(const ThresholdSpec& spec);

}  // namespace jumpsift
