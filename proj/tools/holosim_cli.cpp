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

// Command-line front end: holosim --experiment <id> [--config f.json]
// [--set key=value]... [--seed n] [--out dir] [--threads n]
//
// Exit codes: 0 success, 1 internal error, 2 unknown experiment,
// 3 invalid configuration, 4 I/O failure.

#include <omp.h>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holosim/experiment.hpp"
#include "holosim/io.hpp"

namespace {

constexpr int kExitUnknownExperiment = 2;
constexpr int kExitInvalidConfig = 3;
constexpr int kExitIo = 4;

std::string experiment_list() {
  std::string out;
  for (const auto& name : holosim::experiment_names()) out += (out.empty() ? "" : ", ") + name;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate and NV register simulator"};
  std::string experiment;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "results";
  int threads = 0;
  app.add_option("--experiment", experiment, "One of: " + experiment_list())->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides, "Override a config value, e.g. noise.alpha=0.05");
  app.add_option("--seed", seed, "Random seed (overrides rng_seed)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  }

  if (threads > 0) omp_set_num_threads(threads);
  const int used_threads = threads > 0 ? threads : omp_get_max_threads();

  try {
    nlohmann::json user = nlohmann::json::object();
    if (!config_path.empty()) user = holosim::load_config_file(config_path);
    const holosim::ExperimentConfig config = holosim::make_config(experiment, user, overrides, seed);
    const auto start = std::chrono::steady_clock::now();
    const holosim::ExperimentResult result = holosim::run_experiment(config);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    holosim::write_result(result, config, out_dir, wall, used_threads);
    std::cout << result.experiment << ": wrote " << result.files.size() << " file(s) to " << out_dir
              << " (config " << result.config_hash << ")\n";
    return 0;
  } catch (const holosim::UnknownExperimentError& e) {
    std::cerr << "error: " << e.what() << " (known: " << experiment_list() << ")\n";
    return kExitUnknownExperiment;
  } catch (const holosim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const holosim::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
