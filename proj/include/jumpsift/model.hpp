#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

namespace jumpsift {

// Constant volatility plus compound Poisson jumps with N(0, eta^2) sizes.
struct Model1 {
  double sigma = 0.3;
  double jump_intensity = 5.0;
  double jump_size_std = 0.6;
  double drift = 0.0;
};

// Log-price with exp-OU volatility correlated to the price Brownian motion,
// and compound Poisson relative jumps Z ~ N(m_G, nu^2) entering as ln(1 + Z).
struct Model2 {
  double mu = 0.0;
  double jump_intensity = 4.0;
  double jump_mean = 0.001;
  double jump_var = 0.02;
  double rho = -0.7;
  double h0 = std::log(0.3);
  double reversion = 1.0;
  double mean_level = std::log(0.25);
  double vol_of_vol = 0.01;
};

// sigma * B_t + c * G_t + eta * W_{G_t}, G a Gamma subordinator with Var(G_1) = b.
struct Model3 {
  double sigma = 0.3;
  double gamma_var = 0.23;
  double vg_drift = -0.2;
  double vg_vol = 0.2;
};

enum class DriftKind { zero, constant, mean_reverting, log_price };
enum class VolKind { constant, log_ou };
enum class JumpKind { none, compound_poisson, log_compound_poisson, variance_gamma };

// a_t = level (constant), reversion * (target - X_t) (mean_reverting),
// or level - sigma_t^2 / 2 (log_price).
struct DriftSpec {
  DriftKind kind = DriftKind::zero;
  double level = 0.0;
  double reversion = 0.0;
  double target = 0.0;
};

// sigma_t = sigma, or exp(H_t) with dH = -reversion (H - mean_level) dt + vol_of_vol dW2
// and d<W1, W2> = rho dt.
struct VolSpec {
  VolKind kind = VolKind::constant;
  double sigma = 0.3;
  double h0 = 0.0;
  double mean_level = 0.0;
  double reversion = 1.0;
  double vol_of_vol = 0.0;
  double rho = 0.0;
};

struct JumpSpec {
  JumpKind kind = JumpKind::none;
  double intensity = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double gamma_var = 0.0;
  double vg_drift = 0.0;
  double vg_vol = 0.0;
};

struct CustomModel {
  DriftSpec drift;
  VolSpec vol;
  JumpSpec jumps;
};

using ModelConfig = std::variant<Model1, Model2, Model3, CustomModel>;

/// Every model is simulated through its component form.
CustomModel to_components(const ModelConfig& model);

/// Throws InvalidArgument on non-positive variances/intensities or |rho| > 1.
void validate(const ModelConfig& model);

std::string model_name(const ModelConfig& model);

bool has_jumps(const ModelConfig& model);

/// Set when the diffusion coefficient is a deterministic constant.
std::optional<double> constant_sigma(const ModelConfig& model);

/// True when the jump part is compound Poisson added directly to X.
bool has_additive_compound_poisson(const ModelConfig& model);

}  // namespace jumpsift
