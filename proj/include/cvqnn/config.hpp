// Copyright 2026 The cvqnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cvqnn/harness.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvqnn {

/// Invalid configuration; the message names the field or the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kOutputDirEnv = "CVQNN_OUTPUT_DIR";

/// An experiment plus where to put its results.
struct RunConfig {
  ExperimentSpec spec;
  std::filesystem::path output_dir;
};

/// Config-file fields that can be overridden from the command line:
/// flag name (without dashes) -> JSON pointer.
inline const std::map<std::string, std::string>& config_fields() {
  static const std::map<std::string, std::string> fields = {
      {"strategy", "/strategy"},
      {"target", "/target"},
      {"depths", "/depths"},
      {"param-counts", "/param_counts"},
      {"activations", "/activations"},
      {"quantum", "/quantum"},
      {"seeds", "/seeds"},
      {"seed-base", "/seed_base"},
      {"learning-rate", "/optimizer/learning_rate"},
      {"beta1", "/optimizer/beta1"},
      {"beta2", "/optimizer/beta2"},
      {"epsilon", "/optimizer/epsilon"},
      {"epochs", "/optimizer/epochs"},
      {"cutoff", "/cutoff"},
      {"train-points", "/train_points"},
      {"test-points", "/test_points"},
      {"output-dir", "/output_dir"},
      {"workers", "/workers"},
  };
  return fields;
}

namespace detail {

using nlohmann::json;

inline std::string field_name(const std::string& pointer) {
  std::string name = pointer.substr(1);
  for (char& c : name) {
    if (c == '/') c = '.';
  }
  return name;
}

/// Converts a command-line override string to JSON shaped like the field.
inline json override_value(const std::string& pointer, const std::string& text) {
  static const std::vector<std::string> lists = {"/depths", "/param_counts",
                                                 "/activations"};
  static const std::vector<std::string> strings = {"/strategy", "/target",
                                                   "/output_dir"};
  auto is = [&](const std::vector<std::string>& v) {
    return std::find(v.begin(), v.end(), pointer) != v.end();
  };
  if (is(strings)) return text;
  if (pointer == "/quantum") {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError(field_name(pointer) + ": expected true or false, got '" + text + "'");
  }
  if (is(lists)) {
    json arr = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (pointer == "/activations") {
        arr.push_back(item);
      } else {
        try {
          arr.push_back(json::parse(item));
        } catch (const json::exception&) {
          throw ConfigError(field_name(pointer) + ": '" + item + "' is not a number");
        }
      }
    }
    return arr;
  }
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    throw ConfigError(field_name(pointer) + ": '" + text + "' is not a number");
  }
}

inline void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + where + key + "'");
    }
  }
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + key + ": wrong type (" + obj.at(key).dump() + ")");
  }
}

inline std::uint64_t get_count(const json& obj, const char* key, const std::string& where,
                               std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(where + key + ": expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

inline std::vector<std::size_t> get_count_list(const json& obj, const char* key,
                                               std::vector<std::size_t> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(std::string(key) + ": expected a list");
  std::vector<std::size_t> out;
  for (const auto& item : v) {
    if (!item.is_number_integer() || item.get<std::int64_t>() < 1) {
      throw ConfigError(std::string(key) + ": entries must be positive integers, got " +
                        item.dump());
    }
    out.push_back(item.get<std::size_t>());
  }
  return out;
}

inline std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return "results";
}

/// Parses config text (JSON), applies flag overrides, fills defaults and
/// validates. Defaults: lr 0.01, 10000 epochs, cutoff 30, 20 train and 200
/// test points, 100 seeds.
inline RunConfig parse_config(std::string_view text,
                              const std::map<std::string, std::string>& overrides = {}) {
  using detail::json;
  json doc;
  try {
    doc = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config at " + detail::position(text, e.byte) + ": " +
                      e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  for (const auto& [flag, value] : overrides) {
    const auto it = config_fields().find(flag);
    if (it == config_fields().end()) throw ConfigError("unknown override --" + flag);
    doc[json::json_pointer(it->second)] = detail::override_value(it->second, value);
  }

  detail::reject_unknown(doc,
                         {"strategy", "target", "depths", "param_counts", "activations",
                          "quantum", "seeds", "seed_base", "optimizer", "cutoff",
                          "train_points", "test_points", "output_dir", "workers"},
                         "");
  RunConfig cfg;
  ExperimentSpec& spec = cfg.spec;
  spec.seeds = 100;
  try {
    spec.strategy = parse_strategy(detail::get_field<std::string>(doc, "strategy", "", "layers"));
    spec.target = parse_target(detail::get_field<std::string>(doc, "target", "", "sine"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  spec.depths = detail::get_count_list(doc, "depths", spec.depths);
  spec.param_counts = detail::get_count_list(doc, "param_counts", spec.param_counts);
  if (doc.contains("activations")) {
    const auto& acts = doc.at("activations");
    if (!acts.is_array()) throw ConfigError("activations: expected a list");
    spec.activations.clear();
    for (const auto& a : acts) {
      if (!a.is_string()) throw ConfigError("activations: entries must be strings");
      try {
        spec.activations.push_back(parse_activation(a.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("activations: ") + e.what());
      }
    }
  }
  spec.include_quantum = detail::get_field<bool>(doc, "quantum", "", true);
  spec.seeds = detail::get_count(doc, "seeds", "", spec.seeds);
  spec.seed_base = detail::get_count(doc, "seed_base", "", spec.seed_base);
  if (doc.contains("optimizer")) {
    const json& opt = doc.at("optimizer");
    if (!opt.is_object()) throw ConfigError("optimizer: expected an object");
    detail::reject_unknown(opt, {"learning_rate", "beta1", "beta2", "epsilon", "epochs"},
                           "optimizer.");
    auto& o = spec.optimizer;
    o.learning_rate = detail::get_field<double>(opt, "learning_rate", "optimizer.", o.learning_rate);
    o.beta1 = detail::get_field<double>(opt, "beta1", "optimizer.", o.beta1);
    o.beta2 = detail::get_field<double>(opt, "beta2", "optimizer.", o.beta2);
    o.epsilon = detail::get_field<double>(opt, "epsilon", "optimizer.", o.epsilon);
    o.epochs = detail::get_count(opt, "epochs", "optimizer.", o.epochs);
  }
  const auto cutoff = detail::get_count(doc, "cutoff", "", CutoffConfig::kDefaultDim);
  spec.train_points = detail::get_count(doc, "train_points", "", spec.train_points);
  spec.test_points = detail::get_count(doc, "test_points", "", spec.test_points);
  spec.workers = detail::get_count(doc, "workers", "", spec.workers);
  cfg.output_dir = detail::get_field<std::string>(doc, "output_dir", "",
                                                  default_output_dir().string());
  try {
    spec.cutoff = CutoffConfig(cutoff);
    spec.optimizer.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError((msg.rfind("cutoff", 0) == 0 ? "" : "optimizer.") + msg);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path,
                             const std::map<std::string, std::string>& overrides = {}) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return parse_config(ss.str(), overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace cvqnn
