// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Experiment runner behind the command-line tool. Each experiment turns a
// validated configuration into in-memory CSV/JSON files; writing them out
// is a separate step so bodies can be compared byte for byte.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace holosim {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "0.1.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownExperimentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& experiment_names();

/// Every recognized key with its default value and type.
nlohmann::json default_config();

struct ExperimentConfig {
  nlohmann::json values;  // complete, validated

  std::string experiment() const { return values.at("experiment").get<std::string>(); }
};

/// Merges `user` and then `overrides` ("dotted.key=value") over the
/// defaults. Unknown keys and type mismatches raise ConfigError; an unknown
/// experiment id raises UnknownExperimentError. A null `user` counts as empty.
ExperimentConfig make_config(const std::string& experiment, const nlohmann::json& user = nlohmann::json::object(),
                             const std::vector<std::string>& overrides = {},
                             std::optional<std::uint64_t> seed = std::nullopt);

/// Parses a JSON config file; IoError when unreadable, ConfigError when malformed.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical (sorted-key, compact) JSON text.
std::uint64_t config_hash(const nlohmann::json& config);
std::string config_hash_hex(const nlohmann::json& config);

/// Constructs and validates every module-level parameter object the
/// experiment will use. Throws ConfigError.
void validate_config(const ExperimentConfig& config);

struct OutputFile {
  std::string name;
  std::string contents;
};

struct ExperimentResult {
  std::string experiment;
  std::string config_hash;
  std::vector<OutputFile> files;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes the data files plus meta.json (hash, config, version, wall time).
void write_result(const ExperimentResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& out_dir, double wall_seconds, int threads);

}  // namespace holosim
