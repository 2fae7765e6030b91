#include "jumpsift/stats.hpp"

#include <algorithm>
#include <cmath>

#include "jumpsift/errors.hpp"
#include "jumpsift/normal.hpp"

namespace jumpsift {

Moments sample_moments(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw InvalidArgument("sample moments need at least two samples");
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / static_cast<double>(n);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  Moments out;
  out.mean = mean;
  out.variance = m2 / static_cast<double>(n - 1);
  const double nd = static_cast<double>(n);
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;
  if (m2 > 0.0) {
    if (n >= 3) out.skewness = m3 / std::pow(m2, 1.5);
    if (n >= 4) out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

double Histogram::bin_left(std::size_t k) const {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(counts.size());
}

double Histogram::bin_right(std::size_t k) const { return bin_left(k + 1); }

std::size_t Histogram::total() const {
  std::size_t total = underflow + overflow;
  for (auto c : counts) total += c;
  return total;
}

Histogram build_histogram(std::span<const double> samples, std::size_t bin_count, double lo,
                          double hi) {
  if (bin_count < 1) throw InvalidArgument("histogram needs at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("histogram range must be finite with lo < hi");
  }
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bin_count, 0);
  const double width = (hi - lo) / static_cast<double>(bin_count);
  for (double x : samples) {
    if (x < lo) {
      ++h.underflow;
    } else if (x >= hi || std::isnan(x)) {
      ++h.overflow;
    } else {
      auto k = static_cast<std::size_t>((x - lo) / width);
      // Rounding can push k across a boundary; the edges are authoritative.
      while (k > 0 && x < h.bin_left(k)) --k;
      while (k + 1 < bin_count && x >= h.bin_left(k + 1)) ++k;
      ++h.counts[std::min(k, bin_count - 1)];
    }
  }
  return h;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left) {
  if (samples.empty()) throw InvalidArgument("KS statistic needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double below = static_cast<double>(i) / m;        // F_n just left of x
    const double at = static_cast<double>(j + 1) / m;       // F_n at x
    d = std::max(d, std::abs(at - cdf(sorted[i])));
    d = std::max(d, std::abs(below - cdf_left(sorted[i])));
    i = j + 1;
  }
  return d;
}

double ks_statistic(std::span<const double> samples) {
  return ks_statistic(samples, normal_cdf, normal_cdf);
}

}  // namespace jumpsift
