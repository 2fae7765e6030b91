#include "jumpsift/threshold.hpp"

#include <cmath>
#include <sstream>

#include "jumpsift/errors.hpp"

namespace jumpsift {

double ThresholdSpec::operator()(double lag) const {
  if (!(lag > 0.0)) throw InvalidArgument("threshold needs a positive lag");
  return scale * std::pow(lag, exponent);
}

double ThresholdSpec::at(const TimeGrid& grid, std::size_t interval) const {
  if (per_interval && !grid.is_uniform()) return (*this)(grid.lag(interval));
  return (*this)(grid.max_lag());
}

Admissibility threshold_admissible(const ThresholdSpec& spec) {
  std::ostringstream why;
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
    why << "scale c = " << spec.scale << " must be > 0";
    return {false, why.str()};
  }
  if (!std::isfinite(spec.exponent)) return {false, "exponent must be finite"};
  if (spec.exponent <= 0.0) {
    why << "exponent " << spec.exponent << " <= 0: r(h) does not vanish as h -> 0";
    return {false, why.str()};
  }
  if (spec.exponent >= 1.0) {
    why << "exponent " << spec.exponent
        << " >= 1: h log(1/h) / r(h) diverges, diffusive increments get truncated";
    return {false, why.str()};
  }
  return {true, "0 < exponent < 1 and c > 0"};
}

}  // namespace jumpsift
