#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "jumpsift/experiment.hpp"

namespace jumpsift {

inline constexpr int kSchemaVersion = 1;

/// Experiment configuration in a line-oriented `key = value` format.
///
///     schema_version = 1
///     preset = model1-desk     # optional; supplies every default
///     model = model1           # required unless preset is given
///     n = 2000
///     model1.lambda = 5
///
/// '#' starts a comment. Unknown keys, keys for a model other than the
/// selected one, and malformed values raise ConfigError naming the key.
struct ParsedConfig {
  ExperimentConfig config;
  std::set<std::string> explicit_keys;
};

ParsedConfig parse_config(const std::string& text);
ParsedConfig parse_config_file(const std::filesystem::path& path);

/// Canonical text for a config; parse_config(to_config_text(c)) reproduces c
/// exactly (floats are written with 17 significant digits).
std::string to_config_text(const ExperimentConfig& cfg);

}  // namespace jumpsift
