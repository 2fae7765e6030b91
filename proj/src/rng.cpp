#include "jumpsift/rng.hpp"

#include <cmath>
#include <limits>

#include "jumpsift/errors.hpp"

namespace jumpsift {

double Rng::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

double Rng::gamma(double shape, double scale) {
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^(1/a), carried in log space: for the tiny shapes a
    // fine subordinator grid produces, U^(1/a) underflows most of the time.
    const double log_draw = std::log(gamma(shape + 1.0, 1.0)) + std::log(uniform()) / shape;
    const double draw = std::exp(log_draw) * scale;
    return draw > 0.0 ? draw : std::numeric_limits<double>::denorm_min();
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

double sample_gamma_increment(double shape, double scale, Rng& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw InvalidArgument("gamma increment needs shape > 0 and scale > 0");
  }
  const double draw = rng.gamma(shape, scale);
  if (!std::isfinite(draw)) throw NumericError("gamma sampler produced a non-finite draw");
  return draw;
}

}  // namespace jumpsift
