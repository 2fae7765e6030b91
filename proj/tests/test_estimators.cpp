#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "jumpsift/errors.hpp"
#include "jumpsift/estimators.hpp"
#include "jumpsift/jump_detection.hpp"
#include "jumpsift/normal.hpp"
#include "jumpsift/rng.hpp"
#include "jumpsift/simulate.hpp"

using namespace jumpsift;

namespace {

// r = c exactly (exponent 0), convenient for hand-evaluated cases.
ThresholdSpec constant_threshold(double r) { return {0.0, r, true}; }

SamplePath path_of(std::vector<double> increments) { return SamplePath::from_increments(increments); }

}  // namespace

TEST(RealizedVariance, HandCases) {
  EXPECT_DOUBLE_EQ(realized_variance(path_of({1.0, -1.0})), 2.0);
  EXPECT_DOUBLE_EQ(realized_variance(path_of({0.0, 0.0, 0.0})), 0.0);
}

TEST(RealizedVariance, NeedsTwoObservations) {
  SamplePath p = path_of({1.0});
  p.observations.pop_back();
  EXPECT_THROW((void)realized_variance(p), InvalidArgument);
}

TEST(ThresholdRealizedVariance, HandCase) {
  const SamplePath p = path_of({0.01, -0.02, 0.15});
  // Observations are cumulative sums, so compare with the differenced squares.
  const auto inc = p.increments();
  EXPECT_NEAR(threshold_realized_variance(p, constant_threshold(0.01)), 5e-4, 1e-15);
  EXPECT_DOUBLE_EQ(threshold_realized_variance(p, constant_threshold(0.01)),
                   inc[0] * inc[0] + inc[1] * inc[1]);
}

TEST(ThresholdRealizedVariance, LargeThresholdEqualsRv) {
  const SamplePath p = path_of({0.3, -0.7, 1.2, 0.0});
  EXPECT_DOUBLE_EQ(threshold_realized_variance(p, constant_threshold(10.0)), realized_variance(p));
}

TEST(ThresholdRealizedVariance, TiesAreRetained) {
  const SamplePath p = path_of({0.5, 0.25});
  const double sq = p.increments()[0] * p.increments()[0];
  EXPECT_DOUBLE_EQ(threshold_realized_variance(p, constant_threshold(sq)), realized_variance(p));
  EXPECT_TRUE(jump_indicators(p, constant_threshold(sq)) == (std::vector<bool>{false, false}));
}

TEST(ThresholdRealizedVariance, Model1CltBand) {
  // Per-path error within 3 sqrt(2 h IQ) for most paths at n = 6000.
  const TimeGrid grid = TimeGrid::uniform(6000, 1.0);
  const ThresholdSpec spec{0.9, 1.0, true};
  const double band = 3.0 * std::sqrt(2.0 / 6000.0 * 0.0081);
  int inside = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const SamplePath p = simulate(Model1{}, grid, 1, path_seed(5, s));
    if (std::abs(threshold_realized_variance(p, spec) - 0.09) <= band) ++inside;
  }
  EXPECT_GE(inside, 95);
}

TEST(ThresholdRealizedVariance, MonotoneInThreshold) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> z(0.0, 0.1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> inc(1 + trial % 30);
    for (auto& x : inc) x = z(gen);
    const SamplePath p = path_of(inc);
    double previous = -1.0;
    double max_sq = 0.0;
    for (double d : p.increments()) max_sq = std::max(max_sq, d * d);
    for (double r : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
      const double iv = threshold_realized_variance(p, constant_threshold(r));
      ASSERT_GE(iv, previous);
      ASSERT_LE(iv, realized_variance(p));
      previous = iv;
    }
    ASSERT_DOUBLE_EQ(threshold_realized_variance(p, constant_threshold(max_sq)), realized_variance(p));
  }
}

TEST(ThresholdRealizedVariance, ComplementarityAndFlagEquivalence) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> z(0.0, 0.05);
  std::uniform_int_distribution<int> dyadic(-4096, 4096);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> inc(2 + trial % 40);
    for (auto& x : inc) x = std::ldexp(dyadic(gen), -14);
    const SamplePath p = path_of(inc);
    const ThresholdSpec spec = constant_threshold(std::abs(z(gen)) * 0.01);
    const auto flags = jump_indicators(p, spec);
    const auto d = p.increments();
    double flagged_sq = 0.0;
    double kept_sq = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      (flags[i] ? flagged_sq : kept_sq) += d[i] * d[i];
      ASSERT_EQ(flags[i], !(d[i] * d[i] <= spec.at(p.grid, i)));
    }
    // Dyadic increments make every sum exact.
    ASSERT_EQ(realized_variance(p), threshold_realized_variance(p, spec) + flagged_sq);
    ASSERT_EQ(threshold_realized_variance(p, spec), kept_sq);
  }
}

TEST(Estimators, ScaleCovariance) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z(0.0, 0.1);
  std::vector<double> inc(50);
  for (auto& x : inc) x = z(gen);
  const double s = 4.0;  // power of two keeps the scaling exact
  std::vector<double> scaled = inc;
  for (auto& x : scaled) x *= s;
  const SamplePath a = path_of(inc);
  const SamplePath b = path_of(scaled);
  const ThresholdSpec spec = constant_threshold(0.01);
  const ThresholdSpec spec_scaled = constant_threshold(0.01 * s * s);
  EXPECT_DOUBLE_EQ(realized_variance(b), s * s * realized_variance(a));
  EXPECT_DOUBLE_EQ(bipower_variation(b), s * s * bipower_variation(a));
  EXPECT_DOUBLE_EQ(threshold_realized_variance(b, spec_scaled), s * s * threshold_realized_variance(a, spec));
  const auto da = detect_jumps(a, spec);
  const auto db = detect_jumps(b, spec_scaled);
  EXPECT_EQ(da.indicators, db.indicators);
  for (std::size_t i = 0; i < inc.size(); ++i) EXPECT_DOUBLE_EQ(db.estimated_sizes[i], s * da.estimated_sizes[i]);
}

TEST(Estimators, PermutationSensitivity) {
  const std::vector<double> inc = {0.5, -0.5, 0.0625, 0.125, -0.25, 0.25};
  std::vector<double> permuted = {0.125, 0.5, 0.25, -0.5, 0.0625, -0.25};
  const ThresholdSpec spec = constant_threshold(0.1);
  const SamplePath a = path_of(inc);
  const SamplePath b = path_of(permuted);
  EXPECT_DOUBLE_EQ(realized_variance(a), realized_variance(b));
  EXPECT_DOUBLE_EQ(threshold_realized_variance(a, spec), threshold_realized_variance(b, spec));
  EXPECT_NE(bipower_variation(a), bipower_variation(b));
}

TEST(ThresholdQuarticity, HandCases) {
  EXPECT_DOUBLE_EQ(threshold_quarticity(path_of({0.0, 0.0}), constant_threshold(1.0)), 0.0);
  const SamplePath single = SamplePath::from_increments({0.125}, 0.5);
  const double a = single.increments()[0];
  EXPECT_DOUBLE_EQ(threshold_quarticity(single, constant_threshold(1.0)), a * a * a * a / (3.0 * 0.5));
}

TEST(ThresholdQuarticity, RejectsIrregularGrid) {
  const TimeGrid grid = TimeGrid::irregular(10, 1.0, 0.4, 1);
  const SamplePath p = SamplePath::observed(grid, std::vector<double>(11, 0.0));
  EXPECT_THROW((void)threshold_quarticity(p, constant_threshold(1.0)), Unsupported);
  EXPECT_THROW((void)normalized_bias(p, constant_threshold(1.0), 0.0), Unsupported);
  // Threshold IV still works, with per-interval thresholds.
  EXPECT_DOUBLE_EQ(threshold_realized_variance(p, {0.9, 1.0, true}), 0.0);
}

TEST(ThresholdQuarticity, Model1EnsembleMean) {
  const TimeGrid grid = TimeGrid::uniform(2000, 1.0);
  const ThresholdSpec spec{0.9, 1.0, true};
  double sum = 0.0;
  double sum_sq = 0.0;
  const int paths = 300;
  for (int s = 0; s < paths; ++s) {
    const double q = threshold_quarticity(simulate(Model1{}, grid, 1, path_seed(6, s)), spec);
    sum += q;
    sum_sq += q * q;
  }
  const double mean = sum / paths;
  const double se = std::sqrt((sum_sq / paths - mean * mean) / paths);
  EXPECT_NEAR(mean, 0.0081, 3.0 * se + 0.0081 * 0.02);
}

TEST(BipowerVariation, HandCases) {
  const double a = 0.25;
  const SamplePath equal = path_of({a, a, a, a, a});
  EXPECT_DOUBLE_EQ(bipower_variation(equal), std::numbers::pi / 2.0 * 4.0 * a * a);
  EXPECT_DOUBLE_EQ(bipower_variation(path_of({0.0, 0.0, 0.0})), 0.0);
  EXPECT_THROW((void)bipower_variation(path_of({1.0})), InvalidArgument);
}

TEST(BipowerVariation, DiffusionEnsembleMean) {
  Model1 m;
  m.jump_intensity = 0.0;
  const TimeGrid grid = TimeGrid::uniform(1000, 1.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int paths = 400;
  for (int s = 0; s < paths; ++s) {
    const double b = bipower_variation(simulate(m, grid, 1, path_seed(7, s)));
    sum += b;
    sum_sq += b * b;
  }
  const double mean = sum / paths;
  const double se = std::sqrt((sum_sq / paths - mean * mean) / paths);
  EXPECT_NEAR(mean, 0.09, 3.0 * se);
}

TEST(NormalizedBias, ZeroNumerator) {
  const SamplePath p = path_of({0.01, -0.02, 0.005});
  const double iv = threshold_realized_variance(p, constant_threshold(1.0));
  EXPECT_DOUBLE_EQ(normalized_bias(p, constant_threshold(1.0), iv), 0.0);
}

TEST(NormalizedBias, HandCase) {
  const SamplePath p = path_of({0.01, -0.02});
  // 5e-4 / sqrt((2/3)(1e-8 + 1.6e-7)) = 1.4852...
  EXPECT_NEAR(normalized_bias(p, constant_threshold(1.0), 0.0), 5e-4 / std::sqrt(2.0 / 3.0 * 1.7e-7), 1e-9);
  EXPECT_NEAR(normalized_bias(p, constant_threshold(1.0), 0.0), 1.485, 1e-3);
}

TEST(NormalizedBias, DegenerateDenominator) {
  EXPECT_THROW((void)normalized_bias(path_of({0.0, 0.0}), constant_threshold(1.0), 0.1), DegenerateStatistic);
  EXPECT_THROW((void)normalized_bias(path_of({1.0, 2.0}), constant_threshold(0.1), 0.1), DegenerateStatistic);
}

TEST(ThresholdAdmissible, PowerLaw) {
  EXPECT_TRUE(threshold_admissible({0.9, 1.0, true}).admissible);
  EXPECT_TRUE(threshold_admissible({0.99, 1.0, true}).admissible);
  EXPECT_FALSE(threshold_admissible({1.0, 1.0, true}).admissible);
  EXPECT_FALSE(threshold_admissible({0.0, 1.0, true}).admissible);
  EXPECT_FALSE(threshold_admissible({0.5, 0.0, true}).admissible);
  EXPECT_FALSE(threshold_admissible({1.0, 1.0, true}).reason.empty());
}

TEST(ThresholdAdmissible, LimitsBehaveAsClassified) {
  // h log(1/h) / r(h) along h = 10^-k: shrinking for beta < 1, growing at beta = 1.
  auto ratio = [](double beta, double h) { return h * std::log(1.0 / h) / std::pow(h, beta); };
  EXPECT_LT(ratio(0.9, 1e-12), ratio(0.9, 1e-6));
  EXPECT_GT(ratio(1.0, 1e-12), ratio(1.0, 1e-6));
}

TEST(EstimationReport, InadmissibleThresholdStillComputes) {
  const SamplePath p = path_of({0.01, 0.5, -0.02});
  const EstimationReport r = estimate(p, {1.0, 0.1, true}, 0.0);
  EXPECT_TRUE(r.admissibility_warning);
  EXPECT_GT(r.iv_threshold, 0.0);
  EXPECT_LE(r.iv_threshold, r.realized_variance);
  EXPECT_EQ(r.flagged_intervals, (std::vector<std::size_t>{1}));
  ASSERT_EQ(r.jump_size_estimates.size(), 1u);
  EXPECT_DOUBLE_EQ(r.jump_size_estimates[0].size, p.increments()[1]);
  EXPECT_TRUE(r.normalized_bias.has_value());
  EXPECT_TRUE(r.iq_threshold.has_value());
}

TEST(DetectJumps, PureDiffusionRarelyFlags) {
  Model1 m;
  m.jump_intensity = 0.0;
  const TimeGrid grid = TimeGrid::uniform(6000, 1.0);
  const ThresholdSpec spec{0.9, 1.0, true};
  int clean = 0;
  for (int s = 0; s < 100; ++s) {
    if (detect_jumps(simulate(m, grid, 1, path_seed(8, s)), spec).flagged().empty()) ++clean;
  }
  EXPECT_GE(clean, 99);
}

TEST(DetectJumps, InjectedJumpIsRecovered) {
  Model1 m;
  m.jump_intensity = 0.0;
  const TimeGrid grid = TimeGrid::uniform(6000, 1.0);
  const ThresholdSpec spec{0.9, 1.0, true};
  const double tol = 4.0 * 0.3 * std::sqrt(grid.max_lag());
  int good = 0;
  const int paths = 200;
  for (int s = 0; s < paths; ++s) {
    SamplePath p = simulate(m, grid, 1, path_seed(9, s));
    inject_jump(p, 0.5 + 1e-5, 0.5);
    const JumpDetectionResult d = detect_jumps(p, spec, p.truth->jumps);
    const std::size_t i = grid.interval_containing(0.5 + 1e-5);
    if (d.indicators[i] && std::abs(d.estimated_sizes[i] - 0.5) <= tol && d.match->true_positives == 1) ++good;
  }
  EXPECT_GE(good, static_cast<int>(0.99 * paths));
}

TEST(DetectJumps, SmallJumpIsInvisible) {
  // sqrt(r(h)) at n = 6000 is about 0.02, far above 0.001.
  const TimeGrid grid = TimeGrid::uniform(6000, 1.0);
  SamplePath p = SamplePath::observed(grid, std::vector<double>(6001, 0.0));
  inject_jump(p, 0.3, 0.001);
  const JumpDetectionResult d = detect_jumps(p, {0.9, 1.0, true});
  EXPECT_TRUE(d.flagged().empty());
}

TEST(DetectJumps, MatchingCountsIntervalsOnce) {
  const TimeGrid grid = TimeGrid::uniform(4, 1.0);
  SamplePath p = SamplePath::observed(grid, std::vector<double>(5, 0.0));
  const std::vector<JumpEvent> truth = {{0.1, 1.0, JumpSource::finite_activity},
                                        {0.2, 0.5, JumpSource::finite_activity},
                                        {0.6, 0.001, JumpSource::finite_activity},
                                        {0.9, 0.7, JumpSource::ia_small_aggregate}};
  for (const auto& e : truth) {
    if (e.source == JumpSource::finite_activity) inject_jump(p, e.time, e.size);
  }
  inject_jump(p, 0.8, 2.0);  // not in the truth list: a false positive
  const JumpDetectionResult d = detect_jumps(p, constant_threshold(0.01), truth);
  ASSERT_TRUE(d.match);
  EXPECT_EQ(d.match->true_positives, 1u);
  EXPECT_EQ(d.match->false_negatives, 1u);
  EXPECT_EQ(d.match->false_positives, 1u);
  EXPECT_EQ(d.match->multi_jump_intervals, 1u);
  ASSERT_EQ(d.match->size_errors.size(), 1u);
  EXPECT_DOUBLE_EQ(d.match->size_errors[0].true_size, 1.5);
  EXPECT_NEAR(d.match->size_errors[0].error, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(*d.match->recall(), 0.5);
}

TEST(DetectJumps, FlaggedSizesExceedThreshold) {
  const SamplePath p = simulate(Model1{}, TimeGrid::uniform(2000, 1.0), 1, 12);
  const ThresholdSpec spec{0.9, 1.0, true};
  const JumpDetectionResult d = detect_jumps(p, spec);
  for (std::size_t i = 0; i < d.indicators.size(); ++i) {
    EXPECT_EQ(d.estimated_sizes[i] != 0.0, static_cast<bool>(d.indicators[i]));
    if (d.indicators[i]) EXPECT_GT(std::abs(d.estimated_sizes[i]), std::sqrt(spec.at(p.grid, i)));
  }
}

TEST(DetectJumps, IrregularGridUsesPerIntervalThreshold) {
  const TimeGrid grid = TimeGrid::from_times({0.0, 0.01, 0.5, 1.0});
  const SamplePath p = SamplePath::observed(grid, {0.0, 0.2, 0.4, 0.6});
  const ThresholdSpec per{0.5, 0.1, true};
  const ThresholdSpec global{0.5, 0.1, false};
  // r(0.01) = 0.01 < 0.04 flags the short interval; r(0.49) ~ 0.07 keeps the others.
  EXPECT_EQ(detect_jumps(p, per).flagged(), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(detect_jumps(p, global).flagged().empty());
}

TEST(JumpSizeErrorStat, ZeroWithoutJumps) {
  Model1 m;
  m.jump_intensity = 0.0;
  const SamplePath p = simulate(m, TimeGrid::uniform(1000, 1.0), 1, 2);
  const JumpDetectionResult d = detect_jumps(p, {0.9, 1.0, true});
  ASSERT_TRUE(d.flagged().empty());
  EXPECT_EQ(jump_size_error_stat(p, d), 0.0);
}

TEST(JumpSizeErrorStat, ExactWhenContinuousPartVanishes) {
  SamplePath p = simulate(Model1{}, TimeGrid::uniform(1000, 1.0), 1, 21);
  // Keep only the jump part.
  auto& truth = *p.truth;
  std::fill(p.observations.begin(), p.observations.end(), 0.0);
  std::fill(truth.continuous_part.begin(), truth.continuous_part.end(), 0.0);
  const std::vector<JumpEvent> jumps = truth.jumps;
  truth.jumps.clear();
  for (const auto& e : jumps) {
    if (std::abs(e.size) > 0.05) inject_jump(p, e.time, e.size);
  }
  ASSERT_FALSE(truth.jumps.empty());
  const JumpDetectionResult d = detect_jumps(p, {0.9, 1.0, true});
  EXPECT_NEAR(jump_size_error_stat(p, d), 0.0, 1e-12);
}

TEST(JumpSizeErrorStat, NeedsFiniteActivityTruth) {
  const SamplePath plain = SamplePath::from_increments({0.1, 0.2});
  EXPECT_THROW((void)jump_size_error_stat(plain, detect_jumps(plain, {0.9, 1.0, true})), Unsupported);
  const SamplePath vg = simulate(Model3{}, TimeGrid::uniform(100, 1.0), 1, 1);
  EXPECT_THROW((void)jump_size_error_stat(vg, detect_jumps(vg, {0.9, 1.0, true})), Unsupported);
}

TEST(NormalCdf, CodyMatchesLibm) {
  double worst = 0.0;
  for (double x = -9.0; x <= 9.0; x += 0.001) {
    worst = std::max(worst, std::abs(normal_cdf(x) - 0.5 * std::erfc(-x / std::sqrt(2.0))));
    ASSERT_NEAR(erfc_cody(x), std::erfc(x), 1e-14 * std::max(1.0, std::erfc(x)));
  }
  EXPECT_LT(worst, 1e-7);
  EXPECT_EQ(normal_cdf(0.0), 0.5);
}
