#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "jumpsift/errors.hpp"
#include "jumpsift/experiment.hpp"
#include "jumpsift/normal.hpp"
#include "jumpsift/rng.hpp"
#include "jumpsift/stats.hpp"

using namespace jumpsift;

namespace {

double normal_quantile(double p) {
  double lo = -12.0;
  double hi = 12.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ExperimentConfig small_config(std::size_t n_paths, unsigned parallelism = 1) {
  ExperimentConfig cfg = preset("model1-desk");
  cfg.grid.n = 500;
  cfg.n_paths = n_paths;
  cfg.parallelism = parallelism;
  return cfg;
}

}  // namespace

TEST(KsStatistic, PointMassAtZero) {
  const std::vector<double> zeros(100, 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic(zeros), 0.5);
}

TEST(KsStatistic, QuantilePlugInSample) {
  const std::size_t m = 400;
  std::vector<double> xs(m);
  for (std::size_t i = 0; i < m; ++i) xs[i] = normal_quantile((i + 0.5) / static_cast<double>(m));
  EXPECT_NEAR(ks_statistic(xs), 0.5 / static_cast<double>(m), 1e-9);
}

TEST(KsStatistic, OrderDoesNotMatter) {
  std::vector<double> xs = {0.3, -1.2, 2.0, 0.0, -0.4};
  const double a = ks_statistic(xs);
  std::reverse(xs.begin(), xs.end());
  EXPECT_DOUBLE_EQ(ks_statistic(xs), a);
}

TEST(KsStatistic, GaussianSamplesPassAtFivePercent) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> z;
  int below = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> xs(500);
    for (auto& x : xs) x = z(gen);
    if (ks_statistic(xs) < 1.36 / std::sqrt(500.0)) ++below;
  }
  EXPECT_GE(below, static_cast<int>(0.9 * reps));
}

TEST(KsStatistic, EmptySampleThrows) {
  EXPECT_THROW((void)ks_statistic(std::vector<double>{}), InvalidArgument);
}

TEST(SampleMoments, HandCases) {
  const Moments constant = sample_moments(std::vector<double>{1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(constant.mean, 1.0);
  EXPECT_DOUBLE_EQ(constant.variance, 0.0);
  EXPECT_FALSE(constant.skewness);
  EXPECT_FALSE(constant.excess_kurtosis);

  const Moments pair = sample_moments(std::vector<double>{-1, 1});
  EXPECT_DOUBLE_EQ(pair.mean, 0.0);
  EXPECT_DOUBLE_EQ(pair.variance, 2.0);

  const Moments four = sample_moments(std::vector<double>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(four.mean, 2.5);
  EXPECT_NEAR(four.variance, 5.0 / 3.0, 1e-15);
  ASSERT_TRUE(four.skewness);
  EXPECT_NEAR(*four.skewness, 0.0, 1e-15);
  ASSERT_TRUE(four.excess_kurtosis);
  EXPECT_NEAR(*four.excess_kurtosis, 1.64 - 3.0, 1e-12);

  EXPECT_THROW((void)sample_moments(std::vector<double>{1.0}), InvalidArgument);
}

TEST(Histogram, BinsAreLeftClosed) {
  const Histogram h = build_histogram(std::vector<double>{0.0}, 2, -1.0, 1.0);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{0, 1}));
  const Histogram edges = build_histogram(std::vector<double>{-1.0, 1.0, -1.5}, 2, -1.0, 1.0);
  EXPECT_EQ(edges.counts, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(edges.overflow, 1u);
  EXPECT_EQ(edges.underflow, 1u);
  EXPECT_EQ(edges.total(), 3u);
  EXPECT_DOUBLE_EQ(edges.bin_left(1), 0.0);
  EXPECT_DOUBLE_EQ(edges.bin_right(1), 1.0);
}

TEST(Histogram, EmptyInput) {
  const Histogram h = build_histogram(std::vector<double>{});
  EXPECT_EQ(h.counts.size(), kDefaultHistogramBins);
  EXPECT_EQ(h.total(), 0u);
}

TEST(Histogram, GaussianCentralMass) {
  // P(-0.5 <= Z < 0.5) = 0.383: the two central bins of width 0.5.
  std::mt19937_64 gen(9);
  std::normal_distribution<double> z;
  std::vector<double> xs(500);
  for (auto& x : xs) x = z(gen);
  const Histogram h = build_histogram(xs, 16, -4.0, 4.0);
  const double central = static_cast<double>(h.counts[7] + h.counts[8]) / 500.0;
  EXPECT_NEAR(central, 0.383, 0.05);
}

TEST(Histogram, RejectsBadRange) {
  EXPECT_THROW((void)build_histogram(std::vector<double>{}, 10, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW((void)build_histogram(std::vector<double>{}, 0, -1.0, 1.0), InvalidArgument);
}

TEST(PoissonMixture, AtomAndSymmetry) {
  const double p0 = std::exp(-5.0);
  EXPECT_NEAR(poisson_mixed_normal_cdf(0.0, 0.3, 5.0, 1.0), p0 + 0.5 * (1 - p0), 1e-12);
  EXPECT_NEAR(poisson_mixed_normal_cdf(0.0, 0.3, 5.0, 1.0, true), 0.5 * (1 - p0), 1e-12);
  for (double x : {0.05, 0.3, 1.0, 2.5}) {
    EXPECT_NEAR(poisson_mixed_normal_cdf(x, 0.3, 5.0, 1.0) + poisson_mixed_normal_cdf(-x, 0.3, 5.0, 1.0),
                1.0, 1e-12);
  }
  EXPECT_NEAR(poisson_mixed_normal_cdf(50.0, 0.3, 5.0, 1.0), 1.0, 1e-11);
  EXPECT_NEAR(poisson_mixed_normal_cdf(-50.0, 0.3, 5.0, 1.0), 0.0, 1e-11);
  // No jumps: a unit step at zero.
  EXPECT_EQ(poisson_mixed_normal_cdf(0.0, 0.3, 0.0, 1.0), 1.0);
  EXPECT_EQ(poisson_mixed_normal_cdf(0.0, 0.3, 0.0, 1.0, true), 0.0);
}

TEST(PoissonMixture, Monotone) {
  double previous = 0.0;
  for (double x = -3.0; x <= 3.0; x += 0.01) {
    const double f = poisson_mixed_normal_cdf(x, 0.3, 5.0, 1.0);
    ASSERT_GE(f, previous);
    previous = f;
  }
}

TEST(RunExperiment, SinglePath) {
  const McSummary s = run_experiment(small_config(1));
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0].seed, path_seed(42, 0));
  EXPECT_EQ(s.excluded_paths + s.histogram.total(), 1u);
  ASSERT_TRUE(s.bias_moments);
  EXPECT_FALSE(s.bias_moments->skewness);
}

TEST(RunExperiment, ConservationOfPaths) {
  const McSummary s = run_experiment(small_config(60));
  EXPECT_EQ(s.excluded_paths + s.histogram.total(), 60u);
  EXPECT_EQ(s.normalized_bias_samples().size(), s.histogram.total());
}

TEST(RunExperiment, IrregularGridExcludesEveryPath) {
  ExperimentConfig cfg = small_config(10);
  cfg.grid.jitter = 0.3;
  const McSummary s = run_experiment(cfg);
  EXPECT_EQ(s.excluded_paths, 10u);
  EXPECT_FALSE(s.ks_statistic);
  EXPECT_GT(s.mean_iv_threshold, 0.0);
}

TEST(RunExperiment, IndependentOfParallelism) {
  const McSummary a = run_experiment(small_config(40, 1));
  const McSummary b = run_experiment(small_config(40, 8));
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].iv_threshold, b.records[i].iv_threshold);
    EXPECT_EQ(a.records[i].normalized_bias, b.records[i].normalized_bias);
    EXPECT_EQ(a.records[i].flagged, b.records[i].flagged);
  }
  EXPECT_EQ(a.ks_statistic, b.ks_statistic);
  EXPECT_EQ(a.bias_moments->mean, b.bias_moments->mean);
  EXPECT_EQ(a.histogram.counts, b.histogram.counts);
}

TEST(RunExperiment, SeedChangesEnsemble) {
  ExperimentConfig other = small_config(20);
  other.base_seed = 7;
  const McSummary a = run_experiment(small_config(20));
  const McSummary b = run_experiment(other);
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_NE(a.records[i].iv_threshold, b.records[i].iv_threshold);
}

TEST(RunExperiment, InadmissibleThresholdWarns) {
  ExperimentConfig cfg = small_config(5);
  cfg.threshold.exponent = 1.0;
  EXPECT_TRUE(run_experiment(cfg).admissibility_warning);
  EXPECT_FALSE(run_experiment(small_config(5)).admissibility_warning);
}

TEST(RunExperiment, RejectsZeroPaths) {
  EXPECT_THROW((void)run_experiment(small_config(0)), InvalidArgument);
}

TEST(Presets, UnknownNameThrows) {
  EXPECT_THROW((void)preset("model9-desk"), ConfigError);
  EXPECT_EQ(preset_names().size(), 8u);
}

TEST(SmallJumpBias, BoundValueAndLimit) {
  const ThresholdSpec spec{0.99, 1.0, true};
  const double h = 1.0 / 6000.0;
  EXPECT_NEAR(small_jump_bias_bound(Model3{}, spec, h), 4.0 * std::pow(h, 0.99) / 0.23, 1e-15);
  EXPECT_NEAR(small_jump_bias_bound(Model3{}, spec, h), 3.16e-3, 1e-5);
  EXPECT_LT(small_jump_bias_bound(Model3{}, spec, 1e-9), 1e-7);
}

TEST(Efficiency, LimitConstants) {
  EXPECT_NEAR(bipower_limit_variance(), std::numbers::pi * std::numbers::pi / 4 + std::numbers::pi - 3, 1e-15);
  EXPECT_NEAR(bipower_limit_variance() / kThresholdLimitVariance, 1.304, 1e-3);
}

TEST(Efficiency, RejectsJumpModels) {
  EXPECT_THROW((void)efficiency_comparison(preset("model1-desk"), 10), InvalidArgument);
}

TEST(Efficiency, DiffusionVariancesAreSensible) {
  ExperimentConfig cfg = preset("diffusion-desk");
  cfg.grid.n = 500;
  const EfficiencyTable t = efficiency_comparison(cfg, 300);
  EXPECT_NEAR(t.threshold_variance, 2.0, 0.5);
  EXPECT_NEAR(t.bipower_variance, bipower_limit_variance(), 0.7);
  EXPECT_DOUBLE_EQ(t.ratio, t.bipower_variance / t.threshold_variance);
}

TEST(JumpSizeClt, NoJumpsGivesPerfectFit) {
  ExperimentConfig cfg = preset("diffusion-desk");
  cfg.n_paths = 50;
  const JumpSizeCltResult r = jump_size_clt_experiment(cfg);
  for (double x : r.samples) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(r.ks_statistic, 0.0);
}

TEST(JumpSizeClt, VarianceStableAcrossResolution) {
  // The limit variance is sigma^2 T E[N_T] = 0.45; jumps below sqrt(r(h)) that
  // escape detection add a slowly vanishing excess, so only stability across
  // resolutions and the order of magnitude are checked here.
  ExperimentConfig cfg = preset("jump-clt-desk");
  cfg.n_paths = 1000;
  cfg.parallelism = 4;
  cfg.grid.n = 1000;
  const JumpSizeCltResult coarse = jump_size_clt_experiment(cfg);
  cfg.grid.n = 2000;
  const JumpSizeCltResult fine = jump_size_clt_experiment(cfg);
  const double a = sample_moments(coarse.samples).variance;
  const double b = sample_moments(fine.samples).variance;
  EXPECT_LT(std::abs(a - b) / b, 0.25);
  EXPECT_GT(b, 0.45 * 0.8);
  EXPECT_LT(b, 0.45 * 2.0);
  EXPECT_LT(fine.ks_statistic, 1.36 / std::sqrt(1000.0));
}

TEST(JumpSizeClt, RejectsUnsupportedModels) {
  ExperimentConfig cfg = preset("model3-desk");
  cfg.n_paths = 2;
  EXPECT_THROW((void)jump_size_clt_experiment(cfg), Unsupported);
}
