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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "holosim/experiment.hpp"
#include "holosim/io.hpp"
#include "holosim/pulse.hpp"

namespace holosim {
namespace {

namespace fs = std::filesystem;

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(parse_double(cell));
    rows.push_back(row);
  }
  return rows;
}

const OutputFile& file(const ExperimentResult& r, const std::string& name) {
  for (const auto& f : r.files)
    if (f.name == name) return f;
  throw std::runtime_error("missing output " + name);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HOLOSIM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Config, DefaultsValidateForEveryExperiment) {
  for (const auto& id : experiment_names()) EXPECT_NO_THROW(make_config(id)) << id;
}

TEST(Config, RejectsUnknownKeysAndTypeMismatches) {
  EXPECT_THROW(make_config("qpt", nlohmann::json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(make_config("qpt", nlohmann::json{{"noise", {{"alpha", "big"}}}}), ConfigError);
  EXPECT_THROW(make_config("qpt", nlohmann::json{{"n_samples", 4096.5}}), ConfigError);
  EXPECT_THROW(make_config("qpt", {}, {"noise.alpha"}), ConfigError);
  EXPECT_THROW(make_config("qpt", {}, {"noise.alpha=-3"}), ConfigError);
  EXPECT_THROW(make_config("decay", {}, {"decay.gate=H"}), ConfigError);
  EXPECT_THROW(make_config("crot", {}, {"hybrid.duration=1e-6"}), ConfigError);
  EXPECT_THROW(make_config("fig5"), UnknownExperimentError);
}

TEST(Config, OverridesAndSeed) {
  const ExperimentConfig c = make_config("robustness", {}, {"robustness.eta=0.5", "qpt.readout=exact"}, 42u);
  EXPECT_EQ(c.values["robustness"]["eta"].get<double>(), 0.5);
  EXPECT_EQ(c.values["qpt"]["readout"].get<std::string>(), "exact");
  EXPECT_EQ(c.values["rng_seed"].get<std::uint64_t>(), 42u);
}

TEST(ConfigHash, ChangesIffCanonicalFieldChanges) {
  const auto a = make_config("decay").values;
  const auto b = make_config("decay", nlohmann::json::parse(R"({"decay": {"n_max": 500, "gate": "Y/2"}})")).values;
  EXPECT_EQ(config_hash(a), config_hash(b));
  const auto c = make_config("decay", {}, {"decay.n_max=501"}).values;
  EXPECT_NE(config_hash(a), config_hash(c));
  const auto d = make_config("decay", {}, {}, 1u).values;
  EXPECT_NE(config_hash(a), config_hash(d));
  EXPECT_EQ(config_hash_hex(a).size(), 16u);
}

TEST(Experiments, SensitivityMatchesClosedForm) {
  const auto r = run_experiment(make_config("sensitivity"));
  const auto rows = parse_csv(file(r, "sensitivity.csv").contents);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& row : rows) EXPECT_NEAR(row[1], std::pow(std::sin(row[0] * kPi) / (2.0 * row[0]), 2), 1e-6);
}

TEST(Experiments, RobustnessShape) {
  const auto r = run_experiment(make_config("robustness"));
  const std::string& csv = file(r, "robustness.csv").contents;
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,p1_nhqcplus,p1_nhqc");
  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 11u);
  for (const auto& row : rows)
    if (std::abs(row[0]) >= 0.08 - 1e-12) EXPECT_GE(row[1], row[2]) << row[0];
}

TEST(Experiments, TrajectoryHeaderAndEndpoints) {
  const auto r = run_experiment(make_config("trajectory", {}, {"n_samples=1024", "steps=1024"}));
  const std::string& csv = file(r, "trajectory.csv").contents;
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,p_a,p_b,p_d");
  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 1025u);
  EXPECT_GE(rows[512][1], 0.999);
  EXPECT_GE(rows.back()[2], 0.999);
}

TEST(Experiments, OutputsCarrySchemaVersion) {
  for (const char* id : {"qpt", "decay", "crot"}) {
    const auto r = run_experiment(make_config(id, {}, {"hybrid.n_traj=20"}));
    for (const auto& f : r.files)
      if (f.name.ends_with(".json")) EXPECT_EQ(nlohmann::json::parse(f.contents)["schema_version"], kSchemaVersion) << f.name;
  }
}

TEST(Experiments, DeterministicAcrossRunsAndThreadCounts) {
  for (const auto& id : experiment_names()) {
    const ExperimentConfig c = make_config(id, {}, {"hybrid.n_traj=50", "n_traj=3", "noise.detuning_sigma=1e5"}, 9u);
    omp_set_num_threads(1);
    const auto a = run_experiment(c);
    omp_set_num_threads(4);
    const auto b = run_experiment(c);
    const auto again = run_experiment(c);
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      EXPECT_EQ(a.files[i].contents, b.files[i].contents) << id << " " << a.files[i].name;
      EXPECT_EQ(b.files[i].contents, again.files[i].contents) << id << " " << a.files[i].name;
    }
  }
}

TEST(Cli, ExitCodes) {
  const fs::path dir = fs::temp_directory_path() / "holosim_cli_exit";
  fs::remove_all(dir);
  EXPECT_EQ(run_cli("--experiment sensitivity --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "sensitivity.csv"));
  EXPECT_TRUE(fs::exists(dir / "meta.json"));
  EXPECT_EQ(run_cli("--experiment nope --out " + dir.string()), 2);
  EXPECT_EQ(run_cli("--experiment sensitivity --set sensitivity.eta_step=-1 --out " + dir.string()), 3);
  EXPECT_EQ(run_cli("--experiment sensitivity --set no.such.key=1 --out " + dir.string()), 3);
  const fs::path bad = dir / "bad.json";
  write_text_file(bad, "{ not json");
  EXPECT_EQ(run_cli("--experiment sensitivity --config " + bad.string() + " --out " + dir.string()), 3);
  EXPECT_EQ(run_cli("--experiment sensitivity --config " + (dir / "missing.json").string()), 4);
  EXPECT_EQ(run_cli("--experiment sensitivity --out " + (dir / "sensitivity.csv" / "sub").string()), 4);
  fs::remove_all(dir);
}

TEST(Cli, MetadataSeparateFromData) {
  const fs::path dir = fs::temp_directory_path() / "holosim_cli_meta";
  fs::remove_all(dir);
  ASSERT_EQ(run_cli("--experiment decay --seed 3 --out " + dir.string()), 0);
  const auto meta = nlohmann::json::parse(read_text_file(dir / "meta.json"));
  EXPECT_EQ(meta["experiment"], "decay");
  EXPECT_EQ(meta["config"]["rng_seed"], 3);
  EXPECT_EQ(meta["config_hash"].get<std::string>(), config_hash_hex(make_config("decay", {}, {}, 3u).values));
  EXPECT_TRUE(meta.contains("wall_time_s"));
  EXPECT_EQ(read_text_file(dir / "decay.csv").find("wall"), std::string::npos);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace holosim
