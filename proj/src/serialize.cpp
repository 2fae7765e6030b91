#include "jumpsift/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "jumpsift/errors.hpp"

namespace jumpsift {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double out = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse '" + text +
                          "' as a number");
  }
  return out;
}

Json optional_number(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, ptr);
}

std::string path_csv(const SamplePath& path) {
  std::string out = path.truth ? "time,x,continuous,spot_variance\n" : "time,x\n";
  const auto times = path.grid.times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_double(times[i]);
    out += ',';
    out += format_double(path.observations[i]);
    if (path.truth) {
      const auto& spot = path.truth->spot_variance;
      // Spot variance at t_i; the last time reuses the final substep value.
      const std::size_t j = std::min(i * spot.refinement, spot.values.size() - 1);
      out += ',';
      out += format_double(path.truth->continuous_part[i]);
      out += ',';
      out += format_double(spot.values[j]);
    }
    out += '\n';
  }
  return out;
}

std::string jumps_csv(const std::vector<JumpEvent>& jumps) {
  std::string out = "time,size,source\n";
  for (const auto& e : jumps) {
    out += format_double(e.time) + ',' + format_double(e.size) + ',' +
           std::string(to_string(e.source)) + '\n';
  }
  return out;
}

std::string detection_csv(const SamplePath& path, const ThresholdSpec& spec,
                          const JumpDetectionResult& detection) {
  std::string out = "interval,t_start,t_end,increment,threshold,flagged,size_estimate\n";
  const auto t = path.grid.times();
  for (std::size_t i = 0; i < detection.indicators.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(t[i]) + ',' + format_double(t[i + 1]) + ',' +
           format_double(path.observations[i + 1] - path.observations[i]) + ',' +
           format_double(spec.at(path.grid, i)) + ',' + (detection.indicators[i] ? "1" : "0") +
           ',' + format_double(detection.estimated_sizes[i]) + '\n';
  }
  return out;
}

std::string histogram_csv(const Histogram& histogram) {
  std::string out = "bin_left,bin_right,count\n";
  for (std::size_t k = 0; k < histogram.counts.size(); ++k) {
    out += format_double(histogram.bin_left(k)) + ',' + format_double(histogram.bin_right(k)) +
           ',' + std::to_string(histogram.counts[k]) + '\n';
  }
  return out;
}

std::string efficiency_csv(const EfficiencyTable& table) {
  const double limit_ratio = bipower_limit_variance() / kThresholdLimitVariance;
  std::string out = "estimator,empirical_variance,limit_variance\n";
  out += "threshold," + format_double(table.threshold_variance) + ',' +
         format_double(kThresholdLimitVariance) + '\n';
  out += "bipower," + format_double(table.bipower_variance) + ',' +
         format_double(bipower_limit_variance()) + '\n';
  out += "ratio," + format_double(table.ratio) + ',' + format_double(limit_ratio) + '\n';
  return out;
}

SamplePath parse_path_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("path CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  std::ptrdiff_t time_col = -1;
  std::ptrdiff_t x_col = -1;
  std::ptrdiff_t cont_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "time") time_col = static_cast<std::ptrdiff_t>(c);
    if (header[c] == "x") x_col = static_cast<std::ptrdiff_t>(c);
    if (header[c] == "continuous") cont_col = static_cast<std::ptrdiff_t>(c);
  }
  if (time_col < 0 || x_col < 0) throw InvalidArgument("path CSV needs 'time' and 'x' columns");

  std::vector<double> times;
  std::vector<double> xs;
  std::vector<double> continuous;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields");
    }
    times.push_back(parse_double(fields[static_cast<std::size_t>(time_col)], line_no));
    xs.push_back(parse_double(fields[static_cast<std::size_t>(x_col)], line_no));
    if (cont_col >= 0) {
      continuous.push_back(parse_double(fields[static_cast<std::size_t>(cont_col)], line_no));
    }
  }
  SamplePath path = SamplePath::observed(TimeGrid::from_times(std::move(times)), std::move(xs));
  if (cont_col >= 0) {
    GroundTruth truth;
    truth.continuous_part = std::move(continuous);
    path.truth = std::move(truth);
  }
  return path;
}

SamplePath read_path(const std::filesystem::path& file) {
  try {
    return parse_path_csv(read_text(file));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(file.string() + ": " + e.what());
  }
}

Json to_json(const ThresholdSpec& spec) {
  return Json{{"family", "power_law"},
              {"exponent", spec.exponent},
              {"scale", spec.scale},
              {"per_interval", spec.per_interval}};
}

Json to_json(const EstimationReport& report) {
  Json sizes = Json::array();
  for (const auto& e : report.jump_size_estimates) {
    sizes.push_back(Json{{"interval", e.interval}, {"size", e.size}});
  }
  return Json{{"iv_threshold", report.iv_threshold},
              {"iq_threshold", optional_number(report.iq_threshold)},
              {"realized_variance", report.realized_variance},
              {"bipower_variation", optional_number(report.bipower_variation)},
              {"flagged_intervals", report.flagged_intervals},
              {"jump_size_estimates", sizes},
              {"threshold_used", to_json(report.threshold_used)},
              {"admissibility_warning", report.admissibility_warning},
              {"admissibility_reason", report.admissibility_reason},
              {"normalized_bias", optional_number(report.normalized_bias)}};
}

Json to_json(const JumpDetectionResult& detection) {
  Json out{{"flagged_intervals", detection.flagged()}};
  if (detection.match) {
    const auto& m = *detection.match;
    out["match"] = Json{{"true_positives", m.true_positives},
                        {"false_positives", m.false_positives},
                        {"false_negatives", m.false_negatives},
                        {"multi_jump_intervals", m.multi_jump_intervals},
                        {"recall", optional_number(m.recall())},
                        {"precision", optional_number(m.precision())}};
  }
  return out;
}

Json to_json(const McSummary& summary) {
  Json moments = nullptr;
  if (summary.bias_moments) {
    moments = Json{{"mean", summary.bias_moments->mean},
                   {"variance", summary.bias_moments->variance},
                   {"skewness", optional_number(summary.bias_moments->skewness)},
                   {"excess_kurtosis", optional_number(summary.bias_moments->excess_kurtosis)}};
  }
  Json efficiency = nullptr;
  if (summary.efficiency) {
    efficiency = Json{{"threshold_variance", summary.efficiency->threshold_variance},
                      {"bipower_variance", summary.efficiency->bipower_variance},
                      {"ratio", summary.efficiency->ratio}};
  }
  const auto& d = summary.detection;
  Json records = Json::array();
  for (const auto& r : summary.records) {
    records.push_back(Json{{"index", r.index},
                           {"seed", r.seed},
                           {"iv_threshold", r.iv_threshold},
                           {"true_iv", r.true_iv},
                           {"true_iq", r.true_iq},
                           {"realized_variance", r.realized_variance},
                           {"bipower_variation", r.bipower_variation},
                           {"normalized_bias", optional_number(r.normalized_bias)},
                           {"flagged", r.flagged},
                           {"true_positives", r.true_positives},
                           {"false_positives", r.false_positives},
                           {"false_negatives", r.false_negatives}});
  }
  return Json{{"n_paths", summary.records.size()},
              {"excluded_paths", summary.excluded_paths},
              {"ks_statistic", optional_number(summary.ks_statistic)},
              {"moments", moments},
              {"histogram",
               Json{{"lo", summary.histogram.lo},
                    {"hi", summary.histogram.hi},
                    {"counts", summary.histogram.counts},
                    {"underflow", summary.histogram.underflow},
                    {"overflow", summary.histogram.overflow}}},
              {"detection",
               Json{{"mean_recall", optional_number(d.mean_recall)},
                    {"paths_with_jumps", d.paths_with_jumps},
                    {"mean_false_flags", d.mean_false_flags},
                    {"mean_flagged", d.mean_flagged},
                    {"pooled_precision", optional_number(d.pooled_precision)},
                    {"pooled_recall", optional_number(d.pooled_recall)}}},
              {"efficiency", efficiency},
              {"mean_iv_threshold", summary.mean_iv_threshold},
              {"mean_abs_iv_error", summary.mean_abs_iv_error},
              {"admissibility_warning", summary.admissibility_warning},
              {"records", records}};
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + file.string() + "' failed");
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open '" + file.string() + "' for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace jumpsift
