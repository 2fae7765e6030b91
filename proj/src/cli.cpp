#include "jumpsift/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "jumpsift/config.hpp"
#include "jumpsift/errors.hpp"
#include "jumpsift/estimators.hpp"
#include "jumpsift/jump_detection.hpp"
#include "jumpsift/rng.hpp"
#include "jumpsift/serialize.hpp"
#include "jumpsift/simulate.hpp"

namespace jumpsift {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_file;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> paths;
  std::optional<double> beta;
  std::optional<double> scale_c;
  std::optional<std::size_t> substeps;
  std::optional<double> jitter;
  std::optional<unsigned> parallelism;
  std::string out_dir;
  std::string in_file;
  std::optional<double> true_iv;
};

void add_common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_file, "key = value config file, or a manifest.json to replay");
  cmd->add_option("--preset", o.preset_name, "named configuration (e.g. model1-desk)");
  cmd->add_option("--seed", o.seed, "base seed (fallback: $JUMPSIFT_SEED)");
  cmd->add_option("--n", o.n, "observation intervals");
  cmd->add_option("--paths", o.paths, "Monte Carlo paths");
  cmd->add_option("--beta", o.beta, "threshold exponent in r(h) = c h^beta");
  cmd->add_option("--scale-c", o.scale_c, "threshold scale c");
  cmd->add_option("--substeps", o.substeps, "simulation substeps per observation interval");
  cmd->add_option("--jitter", o.jitter, "irregular grid jitter in [0, 1)");
  cmd->add_option("--parallelism", o.parallelism, "worker threads");
  cmd->add_option("--out", o.out_dir, "output directory (stdout when omitted)");
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--in", o.in_file, "path CSV to analyse instead of simulating");
  cmd->add_option("--true-iv", o.true_iv, "known integrated variance for the normalized bias");
}

ExperimentConfig resolve_config(const Options& o, const std::string& default_preset) {
  if (!o.config_file.empty() && !o.preset_name.empty()) {
    throw ConfigError("--config and --preset are mutually exclusive");
  }
  ParsedConfig parsed;
  if (!o.config_file.empty()) {
    const fs::path file(o.config_file);
    if (file.extension() == ".json") {
      Json manifest;
      try {
        manifest = Json::parse(read_text(file));
      } catch (const Json::exception& e) {
        throw ConfigError("manifest '" + file.string() + "': " + e.what());
      } catch (const IoError& e) {
        throw ConfigError(e.what());
      }
      if (!manifest.contains("config") || !manifest["config"].is_string()) {
        throw ConfigError("manifest '" + file.string() + "' has no 'config' string");
      }
      parsed = parse_config(manifest["config"].get<std::string>());
    } else {
      parsed = parse_config_file(file);
    }
  } else {
    parsed.config = preset(o.preset_name.empty() ? default_preset : o.preset_name);
  }

  ExperimentConfig cfg = parsed.config;
  if (o.seed) {
    cfg.base_seed = *o.seed;
  } else if (!parsed.explicit_keys.contains("seed")) {
    if (const char* env = std::getenv("JUMPSIFT_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        cfg.base_seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ConfigError(std::string("JUMPSIFT_SEED is not an unsigned integer: '") + env + "'");
      }
    }
  }
  if (o.n) cfg.grid.n = *o.n;
  if (o.paths) cfg.n_paths = *o.paths;
  if (o.beta) cfg.threshold.exponent = *o.beta;
  if (o.scale_c) cfg.threshold.scale = *o.scale_c;
  if (o.substeps) cfg.substeps = *o.substeps;
  if (o.jitter) cfg.grid.jitter = *o.jitter;
  if (o.parallelism) cfg.parallelism = *o.parallelism;
  try {
    validate(cfg);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects named outputs; writes them under --out (plus manifest.json) or
// prints the primary one to stdout.
class OutputSink {
 public:
  OutputSink(std::string subcommand, const Options& o, const ExperimentConfig& cfg, std::ostream& out)
      : subcommand_(std::move(subcommand)), options_(o), config_(cfg), out_(out) {}

  void add(const std::string& name, std::string content, bool primary = false) {
    files_.push_back({name, std::move(content), primary});
  }

  void flush() {
    if (options_.out_dir.empty()) {
      for (const auto& f : files_) {
        if (f.primary) out_ << f.content;
      }
      return;
    }
    const fs::path dir(options_.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    Json outputs = Json::array();
    for (const auto& f : files_) {
      write_text(dir / f.name, f.content);
      outputs.push_back(f.name);
    }
    Json manifest{{"tool", "jumpsift"},
                  {"version", std::string(kToolVersion)},
                  {"subcommand", subcommand_},
                  {"rng_algorithm", std::string(Rng::kAlgorithm)},
                  {"base_seed", config_.base_seed},
                  {"input", options_.in_file.empty() ? Json(nullptr) : Json(options_.in_file)},
                  {"true_iv", options_.true_iv ? Json(*options_.true_iv) : Json(nullptr)},
                  {"config", to_config_text(config_)},
                  {"outputs", outputs},
                  {"wall_clock", utc_timestamp()}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  }

 private:
  struct File {
    std::string name;
    std::string content;
    bool primary;
  };
  std::string subcommand_;
  const Options& options_;
  const ExperimentConfig& config_;
  std::ostream& out_;
  std::vector<File> files_;
};

SamplePath simulate_single(const ExperimentConfig& cfg) {
  return simulate(cfg.model, make_grid(cfg), cfg.substeps, path_seed(cfg.base_seed, 0));
}

// Path from --in, or one simulated path (index 0 of the experiment).
SamplePath load_or_simulate(const Options& o, const ExperimentConfig& cfg,
                            std::optional<double>& true_iv) {
  if (!o.in_file.empty()) {
    true_iv = o.true_iv;
    return read_path(o.in_file);
  }
  SamplePath path = simulate_single(cfg);
  true_iv = o.true_iv ? o.true_iv : std::optional<double>(true_integrated_variance(path, 2));
  return path;
}

void run_simulate(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o, "model1-desk");
  const SamplePath path = simulate_single(cfg);
  OutputSink sink("simulate", o, cfg, out);
  sink.add("path.csv", path_csv(path), true);
  sink.add("jumps.csv", jumps_csv(path.truth->jumps));
  sink.flush();
}

void run_estimate(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o, "model1-desk");
  std::optional<double> true_iv;
  const SamplePath path = load_or_simulate(o, cfg, true_iv);
  const EstimationReport report = estimate(path, cfg.threshold, true_iv);
  Json json = to_json(report);
  json["true_iv"] = true_iv ? Json(*true_iv) : Json(nullptr);
  OutputSink sink("estimate", o, cfg, out);
  sink.add("report.json", json.dump(2) + "\n", true);
  sink.flush();
}

void run_detect(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o, "model1-desk");
  std::optional<double> true_iv;
  const SamplePath path = load_or_simulate(o, cfg, true_iv);
  std::span<const JumpEvent> truth;
  if (path.truth) truth = path.truth->jumps;
  const JumpDetectionResult detection = detect_jumps(path, cfg.threshold, truth);
  const EstimationReport report = estimate(path, cfg.threshold, true_iv);
  Json json = to_json(report);
  json["detection"] = to_json(detection);
  OutputSink sink("detect", o, cfg, out);
  sink.add("detection.csv", detection_csv(path, cfg.threshold, detection), true);
  sink.add("report.json", json.dump(2) + "\n");
  sink.flush();
}

void run_mc(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o, "model1-desk");
  const McSummary summary = run_experiment(cfg);
  OutputSink sink("mc", o, cfg, out);
  sink.add("summary.json", to_json(summary).dump(2) + "\n", true);
  sink.add("hist.csv", histogram_csv(summary.histogram));
  sink.flush();
}

void run_compare(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o, "diffusion-desk");
  if (has_jumps(cfg.model)) {
    throw ConfigError("compare needs a jump-free model (e.g. --preset diffusion-desk)");
  }
  const EfficiencyTable table = efficiency_comparison(cfg, cfg.n_paths);
  OutputSink sink("compare", o, cfg, out);
  sink.add("efficiency.csv", efficiency_csv(table), true);
  sink.flush();
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"jumpsift: threshold estimation of integrated variance under jumps"};
  app.name("jumpsift");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options options;
  struct Command {
    const char* name;
    const char* help;
    bool takes_input;
    void (*run)(const Options&, std::ostream&);
  };
  const Command commands[] = {
      {"simulate", "simulate one path and write it as CSV", false, run_simulate},
      {"estimate", "estimate IV, IQ, RV and BPV for one path", true, run_estimate},
      {"detect", "flag jump intervals and estimate jump sizes", true, run_detect},
      {"mc", "Monte Carlo experiment on the normalized bias", false, run_mc},
      {"compare", "threshold vs bipower efficiency under a diffusion", false, run_compare},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common_options(sub, options);
    if (c.takes_input) add_input_options(sub, options);
    subs.emplace_back(sub, &c);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    for (const auto& [sub, command] : subs) {
      if (sub->parsed()) command->run(options, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace jumpsift
