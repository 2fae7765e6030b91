#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "jumpsift/estimators.hpp"
#include "jumpsift/experiment.hpp"
#include "jumpsift/jump_detection.hpp"
#include "jumpsift/sample_path.hpp"

namespace jumpsift {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' decimal point, no locale.
std::string format_double(double value);

// CSV: header row, LF line endings.
//   path:      time,x[,continuous,spot_variance]
//   jumps:     time,size,source
//   detection: interval,t_start,t_end,increment,threshold,flagged,size_estimate
//   histogram: bin_left,bin_right,count
//   efficiency: estimator,empirical_variance,limit_variance
std::string path_csv(const SamplePath& path);
std::string jumps_csv(const std::vector<JumpEvent>& jumps);
std::string detection_csv(const SamplePath& path, const ThresholdSpec& spec,
                          const JumpDetectionResult& detection);
std::string histogram_csv(const Histogram& histogram);
std::string efficiency_csv(const EfficiencyTable& table);

/// Reads a path CSV. Only the time and x columns are required; a continuous
/// column, when present, is restored into ground truth.
SamplePath parse_path_csv(const std::string& text);
SamplePath read_path(const std::filesystem::path& file);

Json to_json(const ThresholdSpec& spec);
Json to_json(const EstimationReport& report);
Json to_json(const JumpDetectionResult& detection);
Json to_json(const McSummary& summary);

void write_text(const std::filesystem::path& file, const std::string& text);
std::string read_text(const std::filesystem::path& file);

}  // namespace jumpsift
