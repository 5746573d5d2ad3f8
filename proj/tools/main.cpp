// Copyright 2026 The PhotonFlow Authors
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

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct Flags {
  std::string config;
  std::string scenario;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Scenario JSON document");
  cmd->add_option("--scenario", f.scenario, "Scenario name (overrides the file)")
      ->check(CLI::IsMember(photonflow::scenario::scenario_names()));
  cmd->add_option("--seed", f.seed, "RNG seed (overrides the file)");
  cmd->add_option("--out-dir", f.out_dir, "Output directory (overrides the file)");
  cmd->add_option("--format", f.format, "Output files to write")->check(CLI::IsMember({"csv", "json", "both"}));
}

photonflow::scenario::ScenarioConfig resolve(const CLI::App* cmd, const Flags& f) {
  namespace sc = photonflow::scenario;
  sc::ScenarioConfig cfg = f.config.empty() ? sc::ScenarioConfig{} : sc::load_config(f.config);
  sc::ConfigOverrides o;
  if (cmd->count("--scenario")) o.scenario = f.scenario;
  if (cmd->count("--seed")) o.seed = f.seed;
  if (cmd->count("--out-dir")) o.out_dir = f.out_dir;
  if (cmd->count("--format")) o.format = sc::parse_format(f.format);
  sc::apply_overrides(cfg, o);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  namespace sc = photonflow::scenario;
  CLI::App app{"Single-photon propagation, feedback shaping and filtering scenarios"};
  app.require_subcommand(1);
  Flags run_flags, validate_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario and write CSV/JSON output");
  add_common(run_cmd, run_flags);
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a scenario without running it");
  add_common(validate_cmd, validate_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (validate_cmd->parsed()) {
      const sc::ValidationReport report = sc::validate(resolve(validate_cmd, validate_flags));
      std::cout << report.str();
      return report.ok() ? kExitOk : kExitConfig;
    }
    const sc::RunResult r = sc::run(resolve(run_cmd, run_flags));
    for (const auto& f : r.files) std::cout << "wrote " << f << '\n';
    return kExitOk;
  } catch (const sc::ConfigError& e) {
    for (const auto& f : e.fields()) std::cerr << "config error: " << f << '\n';
    return kExitConfig;
  } catch (const photonflow::DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const photonflow::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
