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

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "photonflow/errors.hpp"
#include "photonflow/linear_model.hpp"
#include "photonflow/pulse.hpp"

namespace photonflow::scenario {

/// Invalid or incomplete configuration; `fields` lists "field: problem" entries.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

enum class OutputFormat { kCsv, kJson, kBoth };

struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;
};

/// Parsed scenario document. Unset optionals take scenario defaults.
struct ScenarioConfig {
  std::string scenario;
  std::optional<std::uint64_t> seed;

  std::optional<double> kappa;
  double omega = 0.0;  // cavity detuning or atomic transition frequency
  std::string pulse;   // "decaying-exp", "rising-exp" or "gaussian"; empty for scenario default
  std::optional<double> beta;
  std::optional<double> bandwidth;
  std::optional<double> tau;
  std::vector<double> gammas;
  std::complex<double> s11{1.0, 0.0};
  std::complex<double> s21{0.0, 0.0};

  std::optional<double> dt;
  std::optional<double> t0;
  std::optional<double> t_end;
  std::size_t n_traj = 1;
  std::optional<std::size_t> record_every;
  std::optional<SweepRange> sweep;
  std::size_t n_models = 100;
  int max_dim = 4;

  std::string out_dir = ".";
  OutputFormat format = OutputFormat::kBoth;
};

/// Fields present on the command line; each one overrides the file.
struct ConfigOverrides {
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<OutputFormat> format;
};

const std::vector<std::string>& scenario_names();
OutputFormat parse_format(const std::string& s);

/// Parses a JSON document; ConfigError on type errors and unknown keys.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& o);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> notes;  // effective numerics
  bool ok() const noexcept { return errors.empty(); }
  std::string str() const;
};

/// Static checks plus a summary of the numerics a run would use.
ValidationReport validate(const ScenarioConfig& cfg);

/// Headline output of a run; `csv` and `json` are what gets written.
struct RunResult {
  std::string csv;
  std::string json;
  std::vector<std::string> files;
};

/// Runs the scenario in memory. ConfigError when validation fails;
/// DivergenceError propagates from the integrators.
RunResult execute(const ScenarioConfig& cfg);
/// execute() and write the requested files into cfg.out_dir.
RunResult run(const ScenarioConfig& cfg);

/// Random physically realizable model data with n modes and m channels.
LinearSystemParams random_linear_params(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m, bool passive);

/// Pulse selected by the config (after defaults).
PulseShape config_pulse(const ScenarioConfig& cfg);

}  // namespace photonflow::scenario
