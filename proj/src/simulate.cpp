#include "jumpsift/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumpsift/errors.hpp"
#include "jumpsift/rng.hpp"

namespace jumpsift {

namespace {

constexpr int kMaxJumpResamples = 100;

struct PendingJump {
  std::size_t substep;  // global fine-grid index
  double size;
};

// Compound Poisson events on (0, T], drawn before any diffusion variate.
std::vector<JumpEvent> draw_compound_poisson(const JumpSpec& spec, double horizon, Rng& rng) {
  std::vector<JumpEvent> events;
  double t = 0.0;
  for (;;) {
    t += rng.exponential(spec.intensity);
    if (t > horizon) break;
    double z = spec.mean + spec.stddev * rng.normal();
    if (spec.kind == JumpKind::log_compound_poisson) {
      int tries = 0;
      while (1.0 + z <= 0.0) {
        if (++tries > kMaxJumpResamples) {
          throw NumericError("relative jump with 1 + Z <= 0 after " +
                             std::to_string(kMaxJumpResamples) + " resamples");
        }
        z = spec.mean + spec.stddev * rng.normal();
      }
      z = std::log1p(z);
    }
    events.push_back({t, z, JumpSource::finite_activity});
  }
  return events;
}

std::size_t fine_index(const TimeGrid& grid, std::size_t substeps, double t) {
  const std::size_t interval = grid.interval_containing(t);
  const double ds = grid.lag(interval) / static_cast<double>(substeps);
  const double offset = (t - grid.times()[interval]) / ds;
  auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(offset) - 1.0));
  k = std::min(k, substeps - 1);
  return interval * substeps + k;
}

}  // namespace

SamplePath simulate(const ModelConfig& model, const TimeGrid& grid, std::size_t substeps,
                    std::uint64_t seed) {
  if (substeps < 1) throw InvalidArgument("substeps must be >= 1");
  validate(model);
  const CustomModel spec = to_components(model);
  const std::size_t n = grid.intervals();
  Rng rng(seed);

  GroundTruth truth;
  truth.spot_variance.refinement = substeps;
  truth.spot_variance.values.reserve(n * substeps);
  truth.continuous_part.assign(n + 1, 0.0);
  truth.drift_integral.assign(n, 0.0);

  std::vector<PendingJump> pending;
  if (spec.jumps.kind == JumpKind::compound_poisson ||
      spec.jumps.kind == JumpKind::log_compound_poisson) {
    truth.jumps = draw_compound_poisson(spec.jumps, grid.horizon(), rng);
    pending.reserve(truth.jumps.size());
    for (const auto& event : truth.jumps) {
      pending.push_back({fine_index(grid, substeps, event.time), event.size});
    }
  } else if (spec.jumps.kind == JumpKind::variance_gamma) {
    truth.jumps.reserve(n * substeps);
  }

  std::vector<double> observations(n + 1, 0.0);
  double continuous = 0.0;
  double jump_total = 0.0;
  double log_vol = spec.vol.h0;
  auto next_jump = pending.begin();

  const double rho = spec.vol.rho;
  const double rho_perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double b = spec.jumps.gamma_var;

  for (std::size_t i = 0; i < n; ++i) {
    const double t_left = grid.times()[i];
    const double ds = grid.lag(i) / static_cast<double>(substeps);
    const double sqrt_ds = std::sqrt(ds);
    for (std::size_t k = 0; k < substeps; ++k) {
      const double sigma =
          spec.vol.kind == VolKind::constant ? spec.vol.sigma : std::exp(log_vol);
      const double variance = sigma * sigma;
      if (!std::isfinite(variance) || !(variance > 0.0)) {
        throw NumericError("spot variance left (0, inf) at t = " + std::to_string(t_left));
      }
      truth.spot_variance.values.push_back(variance);

      double drift = 0.0;
      switch (spec.drift.kind) {
        case DriftKind::zero:
          break;
        case DriftKind::constant:
          drift = spec.drift.level;
          break;
        case DriftKind::mean_reverting:
          drift = spec.drift.reversion * (spec.drift.target - (continuous + jump_total));
          break;
        case DriftKind::log_price:
          drift = spec.drift.level - 0.5 * variance;
          break;
      }

      const double z_price = rng.normal();
      continuous += drift * ds + sigma * sqrt_ds * z_price;
      truth.drift_integral[i] += drift * ds;

      if (spec.vol.kind == VolKind::log_ou) {
        const double kappa = spec.vol.reversion;
        const double decay = std::exp(-kappa * ds);
        const double sd = spec.vol.vol_of_vol * std::sqrt(-std::expm1(-2.0 * kappa * ds) / (2.0 * kappa));
        const double z_vol = rho * z_price + rho_perp * rng.normal();
        log_vol = spec.vol.mean_level + (log_vol - spec.vol.mean_level) * decay + sd * z_vol;
      }

      const std::size_t fine = i * substeps + k;
      if (spec.jumps.kind == JumpKind::variance_gamma) {
        const double dg = sample_gamma_increment(ds / b, b, rng);
        const double dj = spec.jumps.vg_drift * dg + spec.jumps.vg_vol * std::sqrt(dg) * rng.normal();
        jump_total += dj;
        const double t_right =
            k + 1 == substeps ? grid.times()[i + 1] : t_left + ds * static_cast<double>(k + 1);
        truth.jumps.push_back({t_right, dj, JumpSource::ia_small_aggregate});
      }
      while (next_jump != pending.end() && next_jump->substep == fine) {
        jump_total += next_jump->size;
        ++next_jump;
      }
    }
    truth.continuous_part[i + 1] = continuous;
    observations[i + 1] = continuous + jump_total;
    if (!std::isfinite(observations[i + 1])) {
      throw NumericError("non-finite observation at interval " + std::to_string(i));
    }
  }

  return SamplePath{grid, std::move(observations), std::move(truth)};
}

double true_integrated_variance(const SamplePath& path, int power) {
  if (power != 2 && power != 4) throw InvalidArgument("power must be 2 or 4");
  if (!path.truth) throw Unsupported("true integrated variance needs simulator ground truth");
  const auto& spot = path.truth->spot_variance;
  const std::size_t m = spot.refinement;
  if (spot.values.size() != path.grid.intervals() * m) {
    throw InvalidArgument("spot variance path does not match the grid");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < path.grid.intervals(); ++i) {
    const double ds = path.grid.lag(i) / static_cast<double>(m);
    double interval_sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = spot.values[i * m + k];
      interval_sum += power == 2 ? v : v * v;
    }
    total += interval_sum * ds;
  }
  return total;
}

}  // namespace jumpsift
