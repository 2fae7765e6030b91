#include "jumpsift/sample_path.hpp"

#include <cmath>
#include <string>

#include "jumpsift/errors.hpp"

namespace jumpsift {

std::string_view to_string(JumpSource source) {
  switch (source) {
    case JumpSource::finite_activity:
      return "finite_activity";
    case JumpSource::ia_large:
      return "ia_large";
    case JumpSource::ia_small_aggregate:
      return "ia_small_aggregate";
  }
  return "unknown";
}

JumpSource jump_source_from_string(std::string_view text) {
  if (text == "finite_activity") return JumpSource::finite_activity;
  if (text == "ia_large") return JumpSource::ia_large;
  if (text == "ia_small_aggregate") return JumpSource::ia_small_aggregate;
  throw InvalidArgument("unknown jump source '" + std::string(text) + "'");
}

SamplePath SamplePath::observed(TimeGrid grid, std::vector<double> observations) {
  if (observations.size() != grid.times().size()) {
    throw InvalidArgument("path has " + std::to_string(observations.size()) +
                          " observations for " + std::to_string(grid.times().size()) +
                          " grid times");
  }
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (!std::isfinite(observations[i])) {
      throw InvalidArgument("observation " + std::to_string(i) + " is not finite");
    }
  }
  return SamplePath{std::move(grid), std::move(observations), std::nullopt};
}

SamplePath SamplePath::from_increments(const std::vector<double>& increments, double horizon) {
  if (increments.empty()) throw InvalidArgument("need at least one increment");
  std::vector<double> obs(increments.size() + 1, 0.0);
  for (std::size_t i = 0; i < increments.size(); ++i) obs[i + 1] = obs[i] + increments[i];
  return observed(TimeGrid::uniform(increments.size(), horizon), std::move(obs));
}

std::vector<double> SamplePath::increments() const {
  std::vector<double> out(observations.size() - 1);
  for (std::size_t i = 0; i + 1 < observations.size(); ++i) {
    out[i] = observations[i + 1] - observations[i];
  }
  return out;
}

void inject_jump(SamplePath& path, double time, double size) {
  const std::size_t interval = path.grid.interval_containing(time);
  for (std::size_t k = interval + 1; k < path.observations.size(); ++k) {
    path.observations[k] += size;
  }
  if (path.truth) {
    auto& jumps = path.truth->jumps;
    auto pos = jumps.begin();
    while (pos != jumps.end() && pos->time <= time) ++pos;
    jumps.insert(pos, JumpEvent{time, size, JumpSource::finite_activity});
  }
}

void label_large_jumps(GroundTruth& truth, double cut) {
  for (auto& event : truth.jumps) {
    if (event.source == JumpSource::ia_small_aggregate && std::abs(event.size) > cut) {
      event.source = JumpSource::ia_large;
    }
  }
}

}  // namespace jumpsift
