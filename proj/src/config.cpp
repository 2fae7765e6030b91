#include "jumpsift/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "jumpsift/errors.hpp"
#include "jumpsift/serialize.hpp"

namespace jumpsift {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + value + "'");
}

DriftKind drift_kind(const std::string& key, const std::string& v) {
  if (v == "zero") return DriftKind::zero;
  if (v == "constant") return DriftKind::constant;
  if (v == "mean_reverting") return DriftKind::mean_reverting;
  if (v == "log_price") return DriftKind::log_price;
  throw ConfigError("key '" + key + "': unknown drift '" + v + "'");
}

VolKind vol_kind(const std::string& key, const std::string& v) {
  if (v == "constant") return VolKind::constant;
  if (v == "log_ou") return VolKind::log_ou;
  throw ConfigError("key '" + key + "': unknown volatility process '" + v + "'");
}

JumpKind jump_kind(const std::string& key, const std::string& v) {
  if (v == "none") return JumpKind::none;
  if (v == "compound_poisson") return JumpKind::compound_poisson;
  if (v == "log_compound_poisson") return JumpKind::log_compound_poisson;
  if (v == "variance_gamma") return JumpKind::variance_gamma;
  throw ConfigError("key '" + key + "': unknown jump process '" + v + "'");
}

const char* name_of(DriftKind k) {
  switch (k) {
    case DriftKind::zero: return "zero";
    case DriftKind::constant: return "constant";
    case DriftKind::mean_reverting: return "mean_reverting";
    case DriftKind::log_price: return "log_price";
  }
  return "zero";
}

const char* name_of(VolKind k) { return k == VolKind::log_ou ? "log_ou" : "constant"; }

const char* name_of(JumpKind k) {
  switch (k) {
    case JumpKind::none: return "none";
    case JumpKind::compound_poisson: return "compound_poisson";
    case JumpKind::log_compound_poisson: return "log_compound_poisson";
    case JumpKind::variance_gamma: return "variance_gamma";
  }
  return "none";
}

ModelConfig default_model(const std::string& name) {
  if (name == "model1") return Model1{};
  if (name == "model2") return Model2{};
  if (name == "model3") return Model3{};
  if (name == "custom") return CustomModel{};
  throw ConfigError("key 'model': unknown model '" + name + "'");
}

using Setter = std::function<void(ModelConfig&, const std::string& key, const std::string& value)>;

template <class M>
Setter number_field(double M::*field) {
  return [field](ModelConfig& model, const std::string& key, const std::string& value) {
    std::get<M>(model).*field = to_double(key, value);
  };
}

template <class Part>
Setter custom_number(Part CustomModel::*part, double Part::*field) {
  return [part, field](ModelConfig& model, const std::string& key, const std::string& value) {
    std::get<CustomModel>(model).*part.*field = to_double(key, value);
  };
}

const std::map<std::string, Setter>& model_keys() {
  static const std::map<std::string, Setter> keys = {
      {"model1.sigma", number_field(&Model1::sigma)},
      {"model1.lambda", number_field(&Model1::jump_intensity)},
      {"model1.eta", number_field(&Model1::jump_size_std)},
      {"model1.drift", number_field(&Model1::drift)},
      {"model2.mu", number_field(&Model2::mu)},
      {"model2.lambda", number_field(&Model2::jump_intensity)},
      {"model2.jump_mean", number_field(&Model2::jump_mean)},
      {"model2.jump_var", number_field(&Model2::jump_var)},
      {"model2.rho", number_field(&Model2::rho)},
      {"model2.h0", number_field(&Model2::h0)},
      {"model2.k", number_field(&Model2::reversion)},
      {"model2.hbar", number_field(&Model2::mean_level)},
      {"model2.eta", number_field(&Model2::vol_of_vol)},
      {"model3.sigma", number_field(&Model3::sigma)},
      {"model3.b", number_field(&Model3::gamma_var)},
      {"model3.c", number_field(&Model3::vg_drift)},
      {"model3.eta", number_field(&Model3::vg_vol)},
      {"custom.drift",
       [](ModelConfig& m, const std::string& k, const std::string& v) {
         std::get<CustomModel>(m).drift.kind = drift_kind(k, v);
       }},
      {"custom.drift_level", custom_number(&CustomModel::drift, &DriftSpec::level)},
      {"custom.drift_reversion", custom_number(&CustomModel::drift, &DriftSpec::reversion)},
      {"custom.drift_target", custom_number(&CustomModel::drift, &DriftSpec::target)},
      {"custom.vol",
       [](ModelConfig& m, const std::string& k, const std::string& v) {
         std::get<CustomModel>(m).vol.kind = vol_kind(k, v);
       }},
      {"custom.sigma", custom_number(&CustomModel::vol, &VolSpec::sigma)},
      {"custom.h0", custom_number(&CustomModel::vol, &VolSpec::h0)},
      {"custom.hbar", custom_number(&CustomModel::vol, &VolSpec::mean_level)},
      {"custom.k", custom_number(&CustomModel::vol, &VolSpec::reversion)},
      {"custom.vol_of_vol", custom_number(&CustomModel::vol, &VolSpec::vol_of_vol)},
      {"custom.rho", custom_number(&CustomModel::vol, &VolSpec::rho)},
      {"custom.jumps",
       [](ModelConfig& m, const std::string& k, const std::string& v) {
         std::get<CustomModel>(m).jumps.kind = jump_kind(k, v);
       }},
      {"custom.lambda", custom_number(&CustomModel::jumps, &JumpSpec::intensity)},
      {"custom.jump_mean", custom_number(&CustomModel::jumps, &JumpSpec::mean)},
      {"custom.jump_std", custom_number(&CustomModel::jumps, &JumpSpec::stddev)},
      {"custom.gamma_var", custom_number(&CustomModel::jumps, &JumpSpec::gamma_var)},
      {"custom.vg_drift", custom_number(&CustomModel::jumps, &JumpSpec::vg_drift)},
      {"custom.vg_vol", custom_number(&CustomModel::jumps, &JumpSpec::vg_vol)},
  };
  return keys;
}

const std::vector<std::string>& general_keys() {
  static const std::vector<std::string> keys = {
      "schema_version", "preset", "model", "n", "horizon", "jitter", "substeps", "paths",
      "seed", "beta", "scale_c", "per_interval", "parallelism"};
  return keys;
}

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::vector<std::string> order;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    const bool general =
        std::find(general_keys().begin(), general_keys().end(), key) != general_keys().end();
    if (!general && !model_keys().contains(key)) throw ConfigError("unknown key '" + key + "'");
    if (entries.contains(key)) throw ConfigError("key '" + key + "' given twice");
    entries[key] = value;
    order.push_back(key);
  }

  if (!entries.contains("schema_version")) {
    throw ConfigError("missing required key 'schema_version'");
  }
  if (to_u64("schema_version", entries["schema_version"]) != kSchemaVersion) {
    throw ConfigError("key 'schema_version': unsupported version '" + entries["schema_version"] +
                      "' (expected " + std::to_string(kSchemaVersion) + ")");
  }

  ParsedConfig parsed;
  ExperimentConfig& cfg = parsed.config;
  if (entries.contains("preset")) {
    cfg = preset(entries["preset"]);
  } else if (!entries.contains("model")) {
    throw ConfigError("missing required key 'model'");
  }
  if (entries.contains("model")) {
    const std::string& name = entries["model"];
    if (!entries.contains("preset") || model_name(cfg.model) != name) {
      cfg.model = default_model(name);
    }
  }
  const std::string active = model_name(cfg.model);

  for (const auto& key : order) {
    const std::string& value = entries[key];
    parsed.explicit_keys.insert(key);
    if (key == "schema_version" || key == "preset" || key == "model") continue;
    if (key == "n") {
      cfg.grid.n = to_u64(key, value);
    } else if (key == "horizon") {
      cfg.grid.horizon = to_double(key, value);
    } else if (key == "jitter") {
      cfg.grid.jitter = to_double(key, value);
    } else if (key == "substeps") {
      cfg.substeps = to_u64(key, value);
    } else if (key == "paths") {
      cfg.n_paths = to_u64(key, value);
    } else if (key == "seed") {
      cfg.base_seed = to_u64(key, value);
    } else if (key == "beta") {
      cfg.threshold.exponent = to_double(key, value);
    } else if (key == "scale_c") {
      cfg.threshold.scale = to_double(key, value);
    } else if (key == "per_interval") {
      cfg.threshold.per_interval = to_bool(key, value);
    } else if (key == "parallelism") {
      cfg.parallelism = static_cast<unsigned>(to_u64(key, value));
    } else {
      const std::string prefix = key.substr(0, key.find('.'));
      if (prefix != active) {
        throw ConfigError("key '" + key + "' does not apply to model '" + active + "'");
      }
      model_keys().at(key)(cfg.model, key, value);
    }
  }

  try {
    validate(cfg);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return parsed;
}

ParsedConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto num = [&](const std::string& key, double v) { out << key << " = " << format_double(v) << '\n'; };
  auto integer = [&](const std::string& key, std::uint64_t v) { out << key << " = " << v << '\n'; };

  integer("schema_version", kSchemaVersion);
  out << "model = " << model_name(cfg.model) << '\n';
  integer("n", cfg.grid.n);
  num("horizon", cfg.grid.horizon);
  num("jitter", cfg.grid.jitter);
  integer("substeps", cfg.substeps);
  integer("paths", cfg.n_paths);
  integer("seed", cfg.base_seed);
  num("beta", cfg.threshold.exponent);
  num("scale_c", cfg.threshold.scale);
  out << "per_interval = " << (cfg.threshold.per_interval ? "true" : "false") << '\n';
  integer("parallelism", cfg.parallelism);

  if (const auto* m = std::get_if<Model1>(&cfg.model)) {
    num("model1.sigma", m->sigma);
    num("model1.lambda", m->jump_intensity);
    num("model1.eta", m->jump_size_std);
    num("model1.drift", m->drift);
  } else if (const auto* m2 = std::get_if<Model2>(&cfg.model)) {
    num("model2.mu", m2->mu);
    num("model2.lambda", m2->jump_intensity);
    num("model2.jump_mean", m2->jump_mean);
    num("model2.jump_var", m2->jump_var);
    num("model2.rho", m2->rho);
    num("model2.h0", m2->h0);
    num("model2.k", m2->reversion);
    num("model2.hbar", m2->mean_level);
    num("model2.eta", m2->vol_of_vol);
  } else if (const auto* m3 = std::get_if<Model3>(&cfg.model)) {
    num("model3.sigma", m3->sigma);
    num("model3.b", m3->gamma_var);
    num("model3.c", m3->vg_drift);
    num("model3.eta", m3->vg_vol);
  } else {
    const auto& c = std::get<CustomModel>(cfg.model);
    out << "custom.drift = " << name_of(c.drift.kind) << '\n';
    num("custom.drift_level", c.drift.level);
    num("custom.drift_reversion", c.drift.reversion);
    num("custom.drift_target", c.drift.target);
    out << "custom.vol = " << name_of(c.vol.kind) << '\n';
    num("custom.sigma", c.vol.sigma);
    num("custom.h0", c.vol.h0);
    num("custom.hbar", c.vol.mean_level);
    num("custom.k", c.vol.reversion);
    num("custom.vol_of_vol", c.vol.vol_of_vol);
    num("custom.rho", c.vol.rho);
    out << "custom.jumps = " << name_of(c.jumps.kind) << '\n';
    num("custom.lambda", c.jumps.intensity);
    num("custom.jump_mean", c.jumps.mean);
    num("custom.jump_std", c.jumps.stddev);
    num("custom.gamma_var", c.jumps.gamma_var);
    num("custom.vg_drift", c.jumps.vg_drift);
    num("custom.vg_vol", c.jumps.vg_vol);
  }
  return out.str();
}

}  // namespace jumpsift
