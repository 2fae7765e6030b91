#pragma once

#include <cstddef>
#include <cstdint>

#include "jumpsift/model.hpp"
#include "jumpsift/sample_path.hpp"

namespace jumpsift {

/// Simulates one path on a grid `substeps` times finer than `grid` and keeps
/// the observation times. Ground truth (spot variance on the fine grid, jump
/// events, continuous part, per-interval drift integral) is always attached.
///
/// Finite-activity jump times are drawn in continuous time from exponential
/// waiting times and added to the substep that contains them. The exp-OU
/// log-volatility uses its exact Gaussian transition, correlated with the
/// price increment through a Cholesky factor. Variance-gamma paths record
/// one ia_small_aggregate event per substep.
SamplePath simulate(const ModelConfig& model, const TimeGrid& grid, std::size_t substeps,
                    std::uint64_t seed);

/// Left-endpoint Riemann sum of sigma^power over the fine grid; power is 2 or 4.
/// Throws Unsupported without ground truth.
double true_integrated_variance(const SamplePath& path, int power);

}  // namespace jumpsift
