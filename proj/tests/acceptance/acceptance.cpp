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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photonflow/feedback.hpp"
#include "photonflow/filter.hpp"
#include "photonflow/hilbert.hpp"
#include "photonflow/linear_response.hpp"
#include "scenario.hpp"

namespace {

using namespace photonflow;
using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Json run_scenario(const std::string& doc) {
  return Json::parse(scenario::execute(scenario::parse_config(doc)).json);
}

bool invariants_hold(const Json& j) {
  for (const auto& [name, inv] : j["invariants"].items()) {
    if (!inv["pass"].get<bool>()) return false;
  }
  return true;
}

Op excited() { return projector(basis_state(2, 1)); }

Outcome gaussian_maximum() {
  const auto start = Clock::now();
  const Json j = run_scenario(
      R"({"scenario": "master-equation", "seed": 1, "kappa": 1, "pulse": "gaussian", "Omega": 1.46, "tau": 3})");
  const double secs = seconds_since(start);
  const double pe = j["max_Pe"], t = j["t_at_max"];
  return {std::abs(pe - 0.80) <= 0.01 && std::abs(t - 4.0) <= 0.1 && secs < 10.0,
          "max P_e = " + fmt("%.4f", pe) + " at t = " + fmt("%.3f", t) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome excitation_balance_check() {
  const auto start = Clock::now();
  const double b = excitation_balance(PulseShape::gaussian(1.46, 3.0), 1.0, 4.0);
  const double secs = seconds_since(start);
  return {std::abs(b - 0.80) <= 0.01 && secs < 1.0,
          "balance up to t = 4 is " + fmt("%.4f", b) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome full_excitation() {
  const Json single = run_scenario(
      R"({"scenario": "master-equation", "seed": 1, "kappa": 1, "pulse": "rising-exp", "beta": 1})");
  const Json sweep = run_scenario(R"({"scenario": "excitation-sweep", "seed": 1, "kappa": 1, "pulse": "rising-exp"})");
  const double pe = single["max_Pe"], arg = sweep["argmax"], step = sweep["sweep"]["step"];
  return {pe >= 0.99 && std::abs(arg - 1.0) <= step + 1e-12,
          "max P_e at beta = kappa is " + fmt("%.4f", pe) + ", sweep argmax beta = " + fmt("%.3f", arg) +
              " (step " + fmt("%.3f", step) + ")"};
}

Outcome bandwidth_sweep() {
  const Json sweep = run_scenario(R"({"scenario": "excitation-sweep", "seed": 1, "kappa": 1, "pulse": "gaussian"})");
  const double arg = sweep["argmax_over_kappa"], pe = sweep["max_Pe"];
  return {std::abs(arg - 1.46) <= 0.05,
          "argmax Omega = " + fmt("%.3f", arg) + " kappa, max P_e = " + fmt("%.4f", pe)};
}

double worst_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(std::norm(a[j]) - std::norm(b[j])));
  return worst;
}

Outcome feedback_limits() {
  const double kappa = 1.0;
  const PulseShape xi = PulseShape::gaussian(2.92, 0.0);
  const TimeGrid grid = shaping_grid(xi, 0.0, kappa);
  const ShapedPulse eta1 = cavity_shape(0.0, kappa, xi, grid);
  const ShapedPulse open = closed_loop_shape(0.0, kappa, 0.0, xi, grid);
  const ShapedPulse nearly = closed_loop_shape(0.0, kappa, 0.999, xi, grid);
  const double g0 = worst_gap(open.pulse.as_sampled()->values, eta1.pulse.as_sampled()->values);
  const double g1 = worst_gap(nearly.pulse.as_sampled()->values, sample(xi, grid));
  return {g0 < 1e-6 && g1 < 1e-2,
          "gamma = 0 vs cavity " + fmt("%.2e", g0) + ", gamma = 0.999 vs input " + fmt("%.2e", g1)};
}

Outcome energy_and_all_pass() {
  const std::vector<std::string> docs = {
      R"({"scenario": "cavity-response", "seed": 1, "kappa": 2, "pulse": "decaying-exp", "beta": 2})",
      R"({"scenario": "cavity-response", "seed": 1, "kappa": 2, "pulse": "rising-exp", "beta": 2})",
      R"({"scenario": "cavity-response", "seed": 1, "kappa": 1, "pulse": "gaussian", "Omega": 2.92})",
      R"({"scenario": "feedback-shaping", "seed": 1, "kappa": 2, "pulse": "decaying-exp", "beta": 2,
          "gammas": [0, 0.5, 0.9]})",
      R"({"scenario": "feedback-shaping", "seed": 1, "kappa": 1, "pulse": "gaussian", "Omega": 2.92,
          "gammas": [0, 0.5, 0.9, 0.999]})"};
  double energy = 0.0, modulus = 0.0;
  bool invariants = true;
  for (const auto& doc : docs) {
    const Json j = run_scenario(doc);
    invariants = invariants && invariants_hold(j);
    modulus = std::max(modulus, j["invariants"]["all_pass"]["value"].get<double>());
    std::vector<double> energies;
    if (j.contains("output_energy")) energies = {j["input_energy"], j["output_energy"]};
    else energies = {j["input_energy"], j["eta1_energy"]};
    for (const auto& c : j.value("closed_loop", Json::array())) energies.push_back(c["energy"]);
    for (double e : energies) energy = std::max(energy, std::abs(e - 1.0));
  }
  return {invariants && energy < 1e-4 && modulus < 1e-8,
          "worst energy error " + fmt("%.2e", energy) + ", worst modulus deviation " + fmt("%.2e", modulus)};
}

Outcome realizability() {
  const Json j = run_scenario(R"({"scenario": "realizability-check", "seed": 7, "n_models": 100, "max_dim": 4})");
  const double worst = j["max_pr_residual"];
  const int failures = j["failures"];
  return {failures == 0 && worst < 1e-10,
          std::to_string(failures) + " of 100 models fail, worst residual " + fmt("%.2e", worst)};
}

Outcome filter_master_consistency() {
  const auto start = Clock::now();
  const SLHModel atom = atom_model(0.0, 1.0);
  const CVector ground = basis_state(2, 0);
  const PulseShape xi = PulseShape::gaussian(1.46, 3.0);
  TrajectoryOptions o;
  o.t0 = filter_start_time(xi);
  o.t_end = 8.0;
  o.dt = 1e-3;
  o.seed = 2026;
  o.record_every = 50;
  const EnsembleSummary e = run_ensemble(atom, HomodyneConfig::perfect(), xi, ground, o, 500, excited());
  const auto master = master_evolve(atom, xi, ground, o.t0, o.t_end, o.dt, o.record_every);
  double worst_sigma = 0.0, worst_excess = 0.0;
  std::size_t outside = 0;
  for (std::size_t j = 0; j < master.size(); ++j) {
    const double gap = std::abs(e.mean[j] - expectation(master[j].rho11, excited()).real());
    if (gap > 3.0 * e.stderr_[j]) {
      ++outside;
      worst_excess = std::max(worst_excess, gap - 3.0 * e.stderr_[j]);
    }
    if (e.stderr_[j] > 0.0) worst_sigma = std::max(worst_sigma, gap / e.stderr_[j]);
  }

  TrajectoryOptions euler = o;
  euler.noiseless = true;
  const Trajectory same_step = simulate_trajectory(atom, HomodyneConfig::perfect(), xi, ground, euler);
  double euler_sigma = 0.0;
  for (std::size_t j = 0; j < same_step.path.size(); ++j) {
    const double gap = std::abs(e.mean[j] - expectation(same_step.path[j].rho11, excited()).real());
    if (e.stderr_[j] > 0.0) euler_sigma = std::max(euler_sigma, gap / e.stderr_[j]);
  }

  const auto reference = master_evolve(atom, xi, ground, o.t0, o.t_end, 1e-4, 100);
  auto deterministic_gap = [&](double dt, std::size_t every) {
    TrajectoryOptions d = o;
    d.dt = dt;
    d.record_every = every;
    d.noiseless = true;
    const Trajectory tr = simulate_trajectory(atom, HomodyneConfig::perfect(), xi, ground, d);
    double worst = 0.0;
    for (std::size_t j = 0; j < std::min(tr.path.size(), reference.size()); ++j) {
      if (std::abs(tr.path[j].t - reference[j].t) > 1e-9) continue;
      worst = std::max(worst, std::abs(expectation(tr.path[j].rho11 - reference[j].rho11, excited())));
    }
    return worst;
  };
  const double ratio = deterministic_gap(2e-3, 5) / deterministic_gap(1e-3, 10);
  const double secs = seconds_since(start);
  return {outside == 0 && std::abs(ratio - 2.0) <= 0.2 && secs < 120.0,
          std::to_string(outside) + " of " + std::to_string(master.size()) + " times outside 3 SE (worst " +
              fmt("%.3g", worst_sigma) + " SE, excess " + fmt("%.2e", worst_excess) + "), worst " +
              fmt("%.2f", euler_sigma) + " SE against the same-step Euler curve, order ratio " +
              fmt("%.3f", ratio) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome specializations() {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal(0.0, 1.0);
  const SLHModel atom = atom_model(0.0, 1.0);
  const PulseShape xi = PulseShape::rising_exp(1.0);
  const double dt = 1e-3, sq = std::sqrt(dt);
  FilterState full = FilterState::initial(basis_state(2, 0), filter_start_time(xi));
  FilterState reduced = full;
  double gap = 0.0;
  bool adjoint = true;
  for (std::size_t i = 0; i < 20000; ++i) {
    const cplx x = eval_time(xi, full.t);
    const double dw1 = sq * normal(rng), dw2 = sq * normal(rng);
    full = filter_step(atom, HomodyneConfig::perfect(), x, full, dw1, dw2, dt, i);
    reduced = filter_step_reduced(atom, x, reduced, dw1, dt, i);
    gap = std::max({gap, (full.rho11 - reduced.rho11).cwiseAbs().maxCoeff(),
                    (full.rho10 - reduced.rho10).cwiseAbs().maxCoeff(),
                    (full.rho00 - reduced.rho00).cwiseAbs().maxCoeff()});
    adjoint = adjoint && full.rho01() == Op(full.rho10.adjoint());
  }

  const SLHModel cavity = cavity_model(0.3, 1.0, 4);
  const CVector psi = (basis_state(5, 0) + basis_state(5, 2)).normalized();
  FilterState vac = FilterState::initial(psi, 0.0);
  Op rho = projector(psi);
  double vacuum_gap = 0.0;
  for (std::size_t i = 0; i < 5000; ++i) {
    const double dw = sq * normal(rng);
    vac = filter_step_reduced(cavity, 0.0, vac, dw, dt, i);
    rho = belavkin_step(cavity, rho, dw, dt, i);
    vacuum_gap = std::max(vacuum_gap, (vac.rho00 - rho).cwiseAbs().maxCoeff());
  }
  return {gap < 1e-12 && vacuum_gap < 1e-12 && adjoint,
          "perfect vs reduced " + fmt("%.2e", gap) + ", vacuum vs Belavkin " + fmt("%.2e", vacuum_gap) +
              ", rho01 adjoint " + (adjoint ? "exact" : "broken")};
}

Outcome peak_ordering() {
  const Json j = run_scenario(R"({"scenario": "feedback-shaping", "seed": 1, "kappa": 2, "omega": 0,
      "pulse": "decaying-exp", "beta": 2, "gammas": [0, 0.5, 0.9]})");
  const double input = j["input_peak"];
  std::vector<double> peaks;
  for (const auto& c : j["closed_loop"]) peaks.push_back(c["peak"]);
  bool monotone = true;
  for (std::size_t k = 1; k < peaks.size(); ++k) {
    monotone = monotone && peaks[k] > peaks[k - 1] && std::abs(peaks[k] - input) < std::abs(peaks[k - 1] - input);
  }
  std::string list;
  for (double p : peaks) list += (list.empty() ? "" : ", ") + fmt("%.5f", p);
  return {monotone, "input peak " + fmt("%.5f", input) + ", |eta3|^2 peaks over gamma {0, 0.5, 0.9}: " + list};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photonflow acceptance checks"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria whose failure is known and analysed")->delimiter(',');
  app.add_option("--only", only, "run a subset of criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gaussian excitation maximum", gaussian_maximum},
      {"excitation balance", excitation_balance_check},
      {"full excitation", full_excitation},
      {"bandwidth sweep argmax", bandwidth_sweep},
      {"feedback limits", feedback_limits},
      {"all-pass and energy", energy_and_all_pass},
      {"realizability", realizability},
      {"filter and master consistency", filter_master_consistency},
      {"specialization identities", specializations},
      {"feedback peak ordering", peak_ordering},
  };
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  const std::set<int> selected(only.begin(), only.end());
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    const bool known = expected.count(id) > 0;
    std::printf("%s %2d %s: %s%s\n", r.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), r.detail.c_str(),
                !r.pass && known ? " [expected]" : r.pass && known ? " [unexpected pass]" : "");
    std::fflush(stdout);
    if (r.pass == known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
