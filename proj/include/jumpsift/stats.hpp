#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace jumpsift {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;                  // unbiased
  std::optional<double> skewness;         // m3 / m2^1.5, needs >= 3 samples and m2 > 0
  std::optional<double> excess_kurtosis;  // m4 / m2^2 - 3, needs >= 4 samples and m2 > 0
};

/// Throws InvalidArgument for fewer than two samples.
Moments sample_moments(std::span<const double> samples);

/// Left-closed uniform bins [lo + k w, lo + (k+1) w); samples below lo land in
/// underflow, samples at or above hi in overflow.
struct Histogram {
  double lo = -4.0;
  double hi = 4.0;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  double bin_left(std::size_t k) const;
  double bin_right(std::size_t k) const;
  std::size_t total() const;  // in-range + underflow + overflow
};

inline constexpr std::size_t kDefaultHistogramBins = 60;

Histogram build_histogram(std::span<const double> samples,
                          std::size_t bin_count = kDefaultHistogramBins, double lo = -4.0,
                          double hi = 4.0);

/// Two-sided Kolmogorov-Smirnov distance against a CDF that may have atoms:
/// `cdf_left(x)` must return P(X < x). Ties in the sample are grouped.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left);

/// KS distance against the standard normal.
double ks_statistic(std::span<const double> samples);

}  // namespace jumpsift
