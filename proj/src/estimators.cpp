#include "jumpsift/estimators.hpp"

#include <cmath>
#include <numbers>

#include "jumpsift/errors.hpp"

namespace jumpsift {

namespace {

void require_increments(const SamplePath& path, std::size_t minimum, const char* what) {
  if (path.observations.size() != path.grid.times().size()) {
    throw InvalidArgument("observations do not match the time grid");
  }
  if (path.observations.size() < minimum + 1) {
    throw InvalidArgument(std::string(what) + " needs at least " + std::to_string(minimum) +
                          " increment(s)");
  }
}

void require_uniform(const SamplePath& path, const char* what) {
  if (!path.grid.is_uniform()) {
    throw Unsupported(std::string(what) + " is defined for equally spaced observations only");
  }
}

inline bool retained(double increment, double r) { return increment * increment <= r; }

struct RetainedSums {
  double second = 0.0;
  double fourth = 0.0;
};

RetainedSums retained_sums(const SamplePath& path, const ThresholdSpec& spec) {
  RetainedSums sums;
  const auto& x = path.observations;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double d = x[i + 1] - x[i];
    if (retained(d, spec.at(path.grid, i))) {
      const double d2 = d * d;
      sums.second += d2;
      sums.fourth += d2 * d2;
    }
  }
  return sums;
}

}  // namespace

double realized_variance(const SamplePath& path) {
  require_increments(path, 1, "realized variance");
  double total = 0.0;
  const auto& x = path.observations;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double d = x[i + 1] - x[i];
    total += d * d;
  }
  return total;
}

double threshold_realized_variance(const SamplePath& path, const ThresholdSpec& spec) {
  require_increments(path, 1, "threshold realized variance");
  return retained_sums(path, spec).second;
}

double threshold_quarticity(const SamplePath& path, const ThresholdSpec& spec) {
  require_increments(path, 1, "threshold quarticity");
  require_uniform(path, "threshold quarticity");
  return retained_sums(path, spec).fourth / (3.0 * path.grid.max_lag());
}

double bipower_variation(const SamplePath& path) {
  require_increments(path, 2, "bipower variation");
  const auto& x = path.observations;
  double total = 0.0;
  double previous = std::abs(x[1] - x[0]);
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double current = std::abs(x[i + 1] - x[i]);
    total += current * previous;
    previous = current;
  }
  return std::numbers::pi / 2.0 * total;
}

double normalized_bias(const SamplePath& path, const ThresholdSpec& spec, double true_iv) {
  require_increments(path, 1, "normalized bias");
  require_uniform(path, "normalized bias");
  const RetainedSums sums = retained_sums(path, spec);
  const double denominator = std::sqrt(2.0 / 3.0 * sums.fourth);
  if (!(denominator > 0.0)) {
    throw DegenerateStatistic("normalized bias: every retained increment is zero");
  }
  return (sums.second - true_iv) / denominator;
}

std::vector<bool> jump_indicators(const SamplePath& path, const ThresholdSpec& spec) {
  require_increments(path, 1, "jump detection");
  const auto& x = path.observations;
  std::vector<bool> flags(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    flags[i] = !retained(x[i + 1] - x[i], spec.at(path.grid, i));
  }
  return flags;
}

EstimationReport estimate(const SamplePath& path, const ThresholdSpec& spec,
                          std::optional<double> true_iv) {
  require_increments(path, 1, "estimation");
  EstimationReport report;
  report.threshold_used = spec;
  const Admissibility adm = threshold_admissible(spec);
  report.admissibility_warning = !adm.admissible;
  report.admissibility_reason = adm.reason;

  const RetainedSums sums = retained_sums(path, spec);
  report.iv_threshold = sums.second;
  report.realized_variance = realized_variance(path);
  if (path.grid.is_uniform()) report.iq_threshold = sums.fourth / (3.0 * path.grid.max_lag());
  if (path.grid.intervals() >= 2) report.bipower_variation = bipower_variation(path);

  const auto flags = jump_indicators(path, spec);
  const auto& x = path.observations;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (!flags[i]) continue;
    report.flagged_intervals.push_back(i);
    report.jump_size_estimates.push_back({i, x[i + 1] - x[i]});
  }

  if (true_iv && path.grid.is_uniform() && sums.fourth > 0.0) {
    report.normalized_bias = (sums.second - *true_iv) / std::sqrt(2.0 / 3.0 * sums.fourth);
  }
  return report;
}

}  // namespace jumpsift
