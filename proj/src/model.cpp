#include "jumpsift/model.hpp"

#include "jumpsift/errors.hpp"

namespace jumpsift {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(what) + " must be finite and >= 0");
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

CustomModel to_components(const ModelConfig& model) {
  return std::visit(
      overloaded{
          [](const Model1& m) {
            CustomModel c;
            c.drift = {m.drift == 0.0 ? DriftKind::zero : DriftKind::constant, m.drift, 0.0, 0.0};
            c.vol.kind = VolKind::constant;
            c.vol.sigma = m.sigma;
            if (m.jump_intensity > 0.0) {
              c.jumps.kind = JumpKind::compound_poisson;
              c.jumps.intensity = m.jump_intensity;
              c.jumps.mean = 0.0;
              c.jumps.stddev = m.jump_size_std;
            }
            return c;
          },
          [](const Model2& m) {
            CustomModel c;
            c.drift = {DriftKind::log_price, m.mu, 0.0, 0.0};
            c.vol = {VolKind::log_ou, 0.0, m.h0, m.mean_level, m.reversion, m.vol_of_vol, m.rho};
            if (m.jump_intensity > 0.0) {
              c.jumps.kind = JumpKind::log_compound_poisson;
              c.jumps.intensity = m.jump_intensity;
              c.jumps.mean = m.jump_mean;
              c.jumps.stddev = std::sqrt(m.jump_var);
            }
            return c;
          },
          [](const Model3& m) {
            CustomModel c;
            c.vol.kind = VolKind::constant;
            c.vol.sigma = m.sigma;
            c.jumps.kind = JumpKind::variance_gamma;
            c.jumps.gamma_var = m.gamma_var;
            c.jumps.vg_drift = m.vg_drift;
            c.jumps.vg_vol = m.vg_vol;
            return c;
          },
          [](const CustomModel& m) { return m; },
      },
      model);
}

void validate(const ModelConfig& model) {
  std::visit(overloaded{
                 [](const Model1& m) {
                   require_positive(m.sigma, "model1 sigma");
                   require_non_negative(m.jump_intensity, "model1 jump intensity");
                   require_positive(m.jump_size_std, "model1 jump size std");
                   require_finite(m.drift, "model1 drift");
                 },
                 [](const Model2& m) {
                   require_finite(m.mu, "model2 mu");
                   require_non_negative(m.jump_intensity, "model2 jump intensity");
                   require_finite(m.jump_mean, "model2 jump mean");
                   require_positive(m.jump_var, "model2 jump variance");
                   if (!(std::abs(m.rho) <= 1.0)) throw InvalidArgument("model2 |rho| must be <= 1");
                   require_finite(m.h0, "model2 H0");
                   require_positive(m.reversion, "model2 mean reversion k");
                   require_finite(m.mean_level, "model2 Hbar");
                   require_positive(m.vol_of_vol, "model2 vol of vol");
                 },
                 [](const Model3& m) {
                   require_positive(m.sigma, "model3 sigma");
                   require_positive(m.gamma_var, "model3 gamma variance b");
                   require_finite(m.vg_drift, "model3 VG drift c");
                   require_positive(m.vg_vol, "model3 VG vol eta");
                 },
                 [](const CustomModel&) {},
             },
             model);

  const CustomModel c = to_components(model);
  require_finite(c.drift.level, "drift level");
  require_finite(c.drift.target, "drift target");
  require_non_negative(c.drift.reversion, "drift reversion");
  switch (c.vol.kind) {
    case VolKind::constant:
      require_positive(c.vol.sigma, "sigma");
      break;
    case VolKind::log_ou:
      require_finite(c.vol.h0, "H0");
      require_finite(c.vol.mean_level, "Hbar");
      require_positive(c.vol.reversion, "vol mean reversion");
      require_non_negative(c.vol.vol_of_vol, "vol of vol");
      if (!(std::abs(c.vol.rho) <= 1.0)) throw InvalidArgument("|rho| must be <= 1");
      break;
  }
  switch (c.jumps.kind) {
    case JumpKind::none:
      break;
    case JumpKind::compound_poisson:
    case JumpKind::log_compound_poisson:
      require_positive(c.jumps.intensity, "jump intensity");
      require_finite(c.jumps.mean, "jump mean");
      require_positive(c.jumps.stddev, "jump size std");
      break;
    case JumpKind::variance_gamma:
      require_positive(c.jumps.gamma_var, "gamma variance b");
      require_finite(c.jumps.vg_drift, "VG drift c");
      require_positive(c.jumps.vg_vol, "VG vol eta");
      break;
  }
}

std::string model_name(const ModelConfig& model) {
  return std::visit(overloaded{
                        [](const Model1&) { return std::string("model1"); },
                        [](const Model2&) { return std::string("model2"); },
                        [](const Model3&) { return std::string("model3"); },
                        [](const CustomModel&) { return std::string("custom"); },
                    },
                    model);
}

bool has_jumps(const ModelConfig& model) {
  return to_components(model).jumps.kind != JumpKind::none;
}

std::optional<double> constant_sigma(const ModelConfig& model) {
  const CustomModel c = to_components(model);
  if (c.vol.kind == VolKind::constant) return c.vol.sigma;
  return std::nullopt;
}

bool has_additive_compound_poisson(const ModelConfig& model) {
  return to_components(model).jumps.kind == JumpKind::compound_poisson;
}

}  // namespace jumpsift
