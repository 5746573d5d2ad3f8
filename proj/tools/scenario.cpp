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

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "photonflow/feedback.hpp"
#include "photonflow/filter.hpp"
#include "photonflow/linear_response.hpp"
#include "photonflow/serialize.hpp"

namespace photonflow::scenario {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxCsvRows = 4096;
constexpr double kEnergyTol = 1e-4;
constexpr double kMasterTraceTol = 1e-8;
constexpr double kHermiticityTol = 1e-10;

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

std::size_t decimation(std::size_t n) { return std::max<std::size_t>(1, (n + kMaxCsvRows - 1) / kMaxCsvRows); }

bool uses_atom(const std::string& s) {
  return s == "filter-trajectory" || s == "master-equation" || s == "excitation-sweep";
}

std::string default_pulse(const std::string& scenario) {
  return uses_atom(scenario) ? "gaussian" : "decaying-exp";
}

std::string pulse_kind(const ScenarioConfig& cfg) { return cfg.pulse.empty() ? default_pulse(cfg.scenario) : cfg.pulse; }

double get_number(const Json& j, const std::string& key, std::vector<std::string>& errors) {
  if (!j.is_number()) {
    errors.push_back(key + ": expected a number");
    return 0.0;
  }
  return j.get<double>();
}

std::complex<double> get_complex(const Json& j, const std::string& key, std::vector<std::string>& errors) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  errors.push_back(key + ": expected a number or [re, im]");
  return {};
}

std::size_t get_count(const Json& j, const std::string& key, std::vector<std::string>& errors) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    errors.push_back(key + ": expected a non-negative integer");
    return 0;
  }
  return j.get<std::size_t>();
}

struct Window {
  double t0;
  double t_end;
  double dt;
  std::size_t record_every;
};

Window filter_window(const ScenarioConfig& cfg, const PulseShape& pulse) {
  const double kappa = *cfg.kappa;
  Window w{};
  w.dt = cfg.dt.value_or(1e-3 / kappa);
  w.t0 = cfg.t0.value_or(filter_start_time(pulse));
  double pulse_end = 0.0;
  if (pulse.kind() == PulseKind::kGaussian || pulse.kind() == PulseKind::kDecayingExp) {
    pulse_end = pulse.support(1e-10).second;
  }
  w.t_end = cfg.t_end.value_or(std::max(pulse_end, 0.0) + 10.0 / kappa);
  w.record_every = cfg.record_every.value_or(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.01 / (w.dt * kappa)))));
  return w;
}

Json invariant(bool pass, double value, double tol) {
  return Json{{"pass", pass}, {"value", value}, {"tol", tol}};
}

struct Output {
  CsvTable csv;
  Json summary;
};

Output run_cavity_response(const ScenarioConfig& cfg) {
  const double kappa = *cfg.kappa;
  const PulseShape pulse = config_pulse(cfg);
  const LinearSystemModel model = cavity_linear_model(cfg.omega, kappa);
  const PhotonPropagation prop = propagate_photon(model, pulse);
  const TransferFunction tf = transfer_function(model, prop.grid);
  const RealizabilityReport pr = check_realizability(model);

  const auto& xi = prop.input.as_sampled()->values;
  const auto& eta = prop.minus_pulse.as_sampled()->values;
  const double e_in = trapezoid_energy(xi, prop.time_grid.dt);
  const double e_out = trapezoid_energy(eta, prop.time_grid.dt);
  const double dev = tf.all_pass_deviation();

  CsvTable csv({"t", "abs_xi_sq", "abs_eta_sq"});
  const std::size_t stride = decimation(prop.time_grid.size);
  for (std::size_t j = 0; j < prop.time_grid.size; j += stride) {
    csv.add_row({prop.time_grid.at(j), std::norm(xi[j]), std::norm(eta[j])});
  }
  Json s;
  s["scenario"] = cfg.scenario;
  s["pulse"] = pulse.kind_name();
  s["grid_size"] = prop.time_grid.size;
  s["dt"] = prop.time_grid.dt;
  s["input_energy"] = e_in;
  s["output_energy"] = e_out;
  s["all_pass_deviation"] = dev;
  s["pr_drift_residual"] = pr.drift_residual;
  s["pr_coupling_residual"] = pr.coupling_residual;
  s["invariants"] = {{"energy_preserved", invariant(std::abs(e_out - e_in) < kEnergyTol &&
                                                        std::abs(e_in - 1.0) < kEnergyTol,
                                                    std::abs(e_out - 1.0), kEnergyTol)},
                     {"all_pass", invariant(dev < kAllPassTol, dev, kAllPassTol)},
                     {"realizable", invariant(pr.within(), std::max(pr.drift_residual, pr.coupling_residual),
                                              kRealizabilityTol)}};
  return {std::move(csv), std::move(s)};
}

Output run_feedback_shaping(const ScenarioConfig& cfg) {
  const double kappa = *cfg.kappa;
  const PulseShape pulse = config_pulse(cfg);
  const std::vector<double> gammas = cfg.gammas.empty() ? std::vector<double>{0.0, 0.5, 0.9} : cfg.gammas;
  const TimeGrid grid = shaping_grid(pulse, cfg.omega, kappa);
  const ShapedPulse eta1 = cavity_shape(cfg.omega, kappa, pulse, grid);
  std::vector<ShapedPulse> eta3;
  for (double g : gammas) eta3.push_back(closed_loop_shape(cfg.omega, kappa, g, pulse, grid));

  const std::vector<cplx> xi = sample(pulse, grid);
  std::vector<std::string> cols{"t", "abs_xi_sq", "abs_eta1_sq"};
  for (double g : gammas) cols.push_back("abs_eta3_sq_gamma_" + short_number(g));
  CsvTable csv(cols);
  const auto& e1 = eta1.pulse.as_sampled()->values;
  const std::size_t stride = decimation(grid.size);
  for (std::size_t j = 0; j < grid.size; j += stride) {
    std::vector<double> row{grid.at(j), std::norm(xi[j]), std::norm(e1[j])};
    for (const auto& e : eta3) row.push_back(std::norm(e.pulse.as_sampled()->values[j]));
    csv.add_row(row);
  }

  auto peak = [](const std::vector<cplx>& v) {
    double m = 0.0;
    for (cplx x : v) m = std::max(m, std::norm(x));
    return m;
  };
  const double e_in = riemann_energy(xi, grid.dt);
  double worst_energy = std::abs(eta1.energy - e_in);
  double worst_gain = 0.0;
  Json per_gamma = Json::array();
  const FrequencyGrid fgrid = FrequencyGrid::fft(grid.size, grid.dt);
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    const auto& v = eta3[k].pulse.as_sampled()->values;
    worst_energy = std::max(worst_energy, std::abs(eta3[k].energy - e_in));
    for (std::size_t i = 0; i < fgrid.size(); ++i) {
      const double w = fgrid[i];
      worst_gain = std::max(worst_gain, std::abs(std::abs(closed_loop_response(w, cfg.omega, kappa, gammas[k])) - 1.0));
    }
    per_gamma.push_back({{"gamma", gammas[k]}, {"peak", peak(v)}, {"energy", eta3[k].energy}});
  }
  Json s;
  s["scenario"] = cfg.scenario;
  s["pulse"] = pulse.kind_name();
  s["grid_size"] = grid.size;
  s["dt"] = grid.dt;
  s["input_peak"] = peak(xi);
  s["input_energy"] = e_in;
  s["eta1_peak"] = peak(e1);
  s["eta1_energy"] = eta1.energy;
  s["closed_loop"] = per_gamma;
  s["invariants"] = {{"energy_preserved", invariant(worst_energy < kEnergyTol, worst_energy, kEnergyTol)},
                     {"all_pass", invariant(worst_gain < kAllPassTol, worst_gain, kAllPassTol)}};
  return {std::move(csv), std::move(s)};
}

Output run_filter_trajectory(const ScenarioConfig& cfg) {
  const double kappa = *cfg.kappa;
  const PulseShape pulse = config_pulse(cfg);
  const SLHModel atom = atom_model(cfg.omega, kappa);
  const Window w = filter_window(cfg, pulse);
  const HomodyneConfig hc{cfg.s11, cfg.s21};
  const CVector ground = basis_state(2, 0);
  const Op excited = projector(basis_state(2, 1));

  TrajectoryOptions opts;
  opts.t0 = w.t0;
  opts.t_end = w.t_end;
  opts.dt = w.dt;
  opts.seed = *cfg.seed;
  opts.record_every = w.record_every;
  const Trajectory tr = simulate_trajectory(atom, hc, pulse, ground, opts);

  std::optional<EnsembleSummary> ens;
  if (cfg.n_traj > 1) ens = run_ensemble(atom, hc, pulse, ground, opts, cfg.n_traj, excited);

  std::vector<std::string> cols{"t", "P_e", "tr_rho11", "re_tr_rho10"};
  if (ens) {
    cols.push_back("mean_P_e");
    cols.push_back("stderr_P_e");
  }
  CsvTable csv(cols);
  double trace_drift = 0.0, herm = 0.0, max_pe = 0.0;
  for (std::size_t j = 0; j < tr.path.size(); ++j) {
    const FilterState& s = tr.path[j];
    const double pe = expectation(s.rho11, excited).real();
    trace_drift = std::max(trace_drift, std::abs(s.rho11.trace() - 1.0));
    herm = std::max({herm, hermiticity_defect(s.rho11), hermiticity_defect(s.rho00)});
    max_pe = std::max(max_pe, pe);
    std::vector<double> row{s.t, pe, s.rho11.trace().real(), s.rho10.trace().real()};
    if (ens) {
      row.push_back(ens->mean[j]);
      row.push_back(ens->stderr_[j]);
    }
    csv.add_row(row);
  }
  const double trace_tol = 5.0 * w.dt * (w.t_end - w.t0);
  Json s;
  s["scenario"] = cfg.scenario;
  s["pulse"] = pulse.kind_name();
  s["seed"] = *cfg.seed;
  s["t0"] = w.t0;
  s["t_end"] = w.t_end;
  s["dt"] = w.dt;
  s["steps"] = tr.record.steps();
  s["max_Pe"] = max_pe;
  s["trace_drift"] = trace_drift;
  if (ens) s["ensemble"] = {{"n_traj", ens->n_traj}, {"t", ens->times}, {"mean", ens->mean}, {"stderr", ens->stderr_}};
  s["invariants"] = {{"trace", invariant(trace_drift < trace_tol, trace_drift, trace_tol)},
                     {"hermiticity", invariant(herm < kHermiticityTol, herm, kHermiticityTol)},
                     {"rho01_adjoint", invariant(true, 0.0, 0.0)}};
  return {std::move(csv), std::move(s)};
}

Output run_master_equation(const ScenarioConfig& cfg) {
  const double kappa = *cfg.kappa;
  const PulseShape pulse = config_pulse(cfg);
  const SLHModel atom = atom_model(cfg.omega, kappa);
  const Window w = filter_window(cfg, pulse);
  const Op excited = projector(basis_state(2, 1));
  const auto path = master_evolve(atom, pulse, basis_state(2, 0), w.t0, w.t_end, w.dt, w.record_every);

  CsvTable csv({"t", "P_e", "tr_rho11", "re_tr_rho10"});
  double trace_drift = 0.0, herm = 0.0, max_pe = -1.0, t_max = w.t0;
  for (const MasterState& m : path) {
    const double pe = expectation(m.rho11, excited).real();
    trace_drift = std::max(trace_drift, std::abs(m.rho11.trace() - 1.0));
    herm = std::max(herm, hermiticity_defect(m.rho11));
    if (pe > max_pe) {
      max_pe = pe;
      t_max = m.t;
    }
    csv.add_row({m.t, pe, m.rho11.trace().real(), m.rho10.trace().real()});
  }
  Json s;
  s["scenario"] = cfg.scenario;
  s["pulse"] = pulse.kind_name();
  s["t0"] = w.t0;
  s["t_end"] = w.t_end;
  s["dt"] = w.dt;
  s["max_Pe"] = max_pe;
  s["t_at_max"] = t_max;
  if (pulse.kind() != PulseKind::kRisingExp || t_max > w.t0) {
    s["balance_at_max"] = excitation_balance(pulse, kappa, t_max);
  }
  s["trace_drift"] = trace_drift;
  s["invariants"] = {{"trace", invariant(trace_drift < kMasterTraceTol, trace_drift, kMasterTraceTol)},
                     {"hermiticity", invariant(herm < kHermiticityTol, herm, kHermiticityTol)}};
  return {std::move(csv), std::move(s)};
}

SweepRange default_sweep(const ScenarioConfig& cfg) {
  const double k = *cfg.kappa;
  if (pulse_kind(cfg) == "gaussian") return {0.5 * k, 3.0 * k, 0.01 * k};
  return {0.5 * k, 2.0 * k, 0.01 * k};
}

Output run_excitation_sweep(const ScenarioConfig& cfg) {
  const double kappa = *cfg.kappa;
  const SweepRange r = cfg.sweep.value_or(default_sweep(cfg));
  const bool gaussian = pulse_kind(cfg) == "gaussian";
  const SLHModel atom = atom_model(cfg.omega, kappa);
  const Op excited = projector(basis_state(2, 1));

  CsvTable csv({gaussian ? "Omega" : "beta", "max_Pe", "t_at_max"});
  double best = -1.0, arg = r.min;
  const auto count = static_cast<std::size_t>(std::floor((r.max - r.min) / r.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double p = r.min + static_cast<double>(i) * r.step;
    ScenarioConfig c = cfg;
    if (gaussian) {
      c.bandwidth = p;
    } else {
      c.beta = p;
    }
    const PulseShape pulse = config_pulse(c);
    c.t0.reset();
    c.t_end.reset();
    const Window w = filter_window(c, pulse);
    const auto path = master_evolve(atom, pulse, basis_state(2, 0), w.t0, w.t_end, w.dt, 1);
    double m = -1.0, tm = w.t0;
    for (const MasterState& st : path) {
      const double pe = expectation(st.rho11, excited).real();
      if (pe > m) {
        m = pe;
        tm = st.t;
      }
    }
    csv.add_row({p, m, tm});
    if (m > best) {
      best = m;
      arg = p;
    }
  }
  Json s;
  s["scenario"] = cfg.scenario;
  s["pulse"] = gaussian ? "gaussian" : pulse_kind(cfg);
  s["parameter"] = gaussian ? "Omega" : "beta";
  s["sweep"] = {{"min", r.min}, {"max", r.max}, {"step", r.step}, {"points", count}};
  s["argmax"] = arg;
  s["argmax_over_kappa"] = arg / kappa;
  s["max_Pe"] = best;
  s["invariants"] = Json::object();
  return {std::move(csv), std::move(s)};
}

Output run_realizability_check(const ScenarioConfig& cfg) {
  std::mt19937_64 rng(*cfg.seed);
  std::uniform_int_distribution<int> dim(1, cfg.max_dim);
  std::bernoulli_distribution coin(0.5);
  CsvTable csv({"index", "n", "m", "passive", "drift_residual", "coupling_residual", "all_pass_deviation"});
  double worst = 0.0, worst_dev = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cfg.n_models; ++i) {
    const int n = dim(rng), m = dim(rng);
    const bool passive = coin(rng);
    const LinearSystemModel model = build_state_space(random_linear_params(rng, n, m, passive));
    const RealizabilityReport pr = check_realizability(model);
    double dev = 0.0;
    if (model.passive() && model.hurwitz()) {
      dev = transfer_function(model, FrequencyGrid::symmetric(20.0, 201)).all_pass_deviation();
    }
    worst = std::max({worst, pr.drift_residual, pr.coupling_residual});
    worst_dev = std::max(worst_dev, dev);
    if (!pr.within()) ++failures;
    csv.add_row({static_cast<double>(i), static_cast<double>(n), static_cast<double>(m), passive ? 1.0 : 0.0,
                 pr.drift_residual, pr.coupling_residual, dev});
  }
  Json s;
  s["scenario"] = cfg.scenario;
  s["seed"] = *cfg.seed;
  s["n_models"] = cfg.n_models;
  s["max_dim"] = cfg.max_dim;
  s["max_pr_residual"] = worst;
  s["failures"] = failures;
  s["max_all_pass_deviation"] = worst_dev;
  s["invariants"] = {{"realizable", invariant(failures == 0, worst, kRealizabilityTol)},
                     {"all_pass", invariant(worst_dev < kAllPassTol, worst_dev, kAllPassTol)}};
  return {std::move(csv), std::move(s)};
}

void require_positive(const std::optional<double>& v, const std::string& name, std::vector<std::string>& errors,
                      bool required = true) {
  if (!v) {
    if (required) errors.push_back(name + ": required");
    return;
  }
  if (!(*v > 0.0) || !std::isfinite(*v)) errors.push_back(name + ": must be positive");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> fields)
    : Error("invalid configuration: " + join(fields, "; ")), fields_(std::move(fields)) {}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"cavity-response",   "feedback-shaping", "filter-trajectory",
                                              "master-equation",   "excitation-sweep", "realizability-check"};
  return names;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  if (s == "both") return OutputFormat::kBoth;
  throw ConfigError({"format: expected csv, json or both, got '" + s + "'"});
}

ScenarioConfig parse_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("document: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"document: expected a JSON object"});

  ScenarioConfig cfg;
  std::vector<std::string> errors;
  for (const auto& [key, v] : doc.items()) {
    if (key == "scenario") {
      if (v.is_string()) cfg.scenario = v.get<std::string>();
      else errors.push_back("scenario: expected a string");
    } else if (key == "seed") {
      if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) cfg.seed = v.get<std::uint64_t>();
      else errors.push_back("seed: expected a non-negative integer");
    } else if (key == "kappa") {
      cfg.kappa = get_number(v, key, errors);
    } else if (key == "omega") {
      cfg.omega = get_number(v, key, errors);
    } else if (key == "pulse") {
      if (v.is_string()) cfg.pulse = v.get<std::string>();
      else errors.push_back("pulse: expected a string");
    } else if (key == "beta") {
      cfg.beta = get_number(v, key, errors);
    } else if (key == "Omega") {
      cfg.bandwidth = get_number(v, key, errors);
    } else if (key == "tau") {
      cfg.tau = get_number(v, key, errors);
    } else if (key == "gammas" || key == "gamma") {
      if (v.is_number()) {
        cfg.gammas = {v.get<double>()};
      } else if (v.is_array()) {
        for (const auto& g : v) cfg.gammas.push_back(get_number(g, key, errors));
      } else {
        errors.push_back(key + ": expected a number or a list of numbers");
      }
    } else if (key == "s11") {
      cfg.s11 = get_complex(v, key, errors);
    } else if (key == "s21") {
      cfg.s21 = get_complex(v, key, errors);
    } else if (key == "dt") {
      cfg.dt = get_number(v, key, errors);
    } else if (key == "t0") {
      cfg.t0 = get_number(v, key, errors);
    } else if (key == "t_end" || key == "T") {
      cfg.t_end = get_number(v, key, errors);
    } else if (key == "n_traj") {
      cfg.n_traj = get_count(v, key, errors);
    } else if (key == "record_every") {
      cfg.record_every = get_count(v, key, errors);
    } else if (key == "sweep") {
      if (v.is_object() && v.contains("min") && v.contains("max") && v.contains("step")) {
        cfg.sweep = SweepRange{get_number(v["min"], "sweep.min", errors), get_number(v["max"], "sweep.max", errors),
                               get_number(v["step"], "sweep.step", errors)};
      } else {
        errors.push_back("sweep: expected {\"min\", \"max\", \"step\"}");
      }
    } else if (key == "n_models") {
      cfg.n_models = get_count(v, key, errors);
    } else if (key == "max_dim") {
      cfg.max_dim = static_cast<int>(get_count(v, key, errors));
    } else if (key == "out_dir") {
      if (v.is_string()) cfg.out_dir = v.get<std::string>();
      else errors.push_back("out_dir: expected a string");
    } else if (key == "format") {
      if (v.is_string()) {
        try {
          cfg.format = parse_format(v.get<std::string>());
        } catch (const ConfigError& e) {
          errors.insert(errors.end(), e.fields().begin(), e.fields().end());
        }
      } else {
        errors.push_back("format: expected a string");
      }
    } else {
      errors.push_back(key + ": unknown field");
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& o) {
  if (o.scenario) cfg.scenario = *o.scenario;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.format) cfg.format = *o.format;
}

PulseShape config_pulse(const ScenarioConfig& cfg) {
  const std::string kind = pulse_kind(cfg);
  if (kind == "decaying-exp") return PulseShape::decaying_exp(cfg.beta.value_or(0.0));
  if (kind == "rising-exp") return PulseShape::rising_exp(cfg.beta.value_or(0.0));
  if (kind == "gaussian") return PulseShape::gaussian(cfg.bandwidth.value_or(0.0), cfg.tau.value_or(0.0));
  throw ConfigError({"pulse: unknown kind '" + kind + "'"});
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  os << (ok() ? "ok" : "invalid") << '\n';
  for (const auto& e : errors) os << "error: " << e << '\n';
  for (const auto& n : notes) os << "note: " << n << '\n';
  return os.str();
}

ValidationReport validate(const ScenarioConfig& cfg) {
  ValidationReport r;
  auto& err = r.errors;
  const auto& names = scenario_names();
  if (cfg.scenario.empty()) {
    err.push_back("scenario: required");
  } else if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
    err.push_back("scenario: unknown '" + cfg.scenario + "'");
  }
  if (!cfg.seed) err.push_back("seed: required");
  if (!r.ok() && cfg.scenario.empty()) return r;

  if (cfg.scenario == "realizability-check") {
    if (cfg.n_models == 0) err.push_back("n_models: must be positive");
    if (cfg.max_dim < 1 || cfg.max_dim > 16) err.push_back("max_dim: must lie in [1, 16]");
    r.notes.push_back("models " + std::to_string(cfg.n_models) + ", dimensions up to " + std::to_string(cfg.max_dim));
    return r;
  }

  require_positive(cfg.kappa, "kappa", err);
  require_positive(cfg.dt, "dt", err, false);
  if (!std::isfinite(cfg.omega)) err.push_back("omega: must be finite");
  const std::string kind = pulse_kind(cfg);
  const bool sweep = cfg.scenario == "excitation-sweep";
  if (kind == "decaying-exp" || kind == "rising-exp") {
    if (!(sweep && !cfg.beta)) require_positive(cfg.beta, "beta", err);
  } else if (kind == "gaussian") {
    if (!(sweep && !cfg.bandwidth)) require_positive(cfg.bandwidth, "Omega", err);
  } else {
    err.push_back("pulse: unknown kind '" + kind + "'");
  }
  if (cfg.scenario == "feedback-shaping") {
    for (double g : cfg.gammas) {
      if (!(g >= 0.0 && g <= 1.0)) err.push_back("gammas: " + short_number(g) + " outside [0, 1]");
    }
  }
  if (cfg.scenario == "filter-trajectory") {
    if (cfg.n_traj == 0) err.push_back("n_traj: must be positive");
    const double norm = std::norm(cfg.s11) + std::norm(cfg.s21);
    if (std::abs(norm - 1.0) > 1e-12) err.push_back("s11, s21: |s11|^2 + |s21|^2 must equal 1");
  }
  if (cfg.record_every && *cfg.record_every == 0) err.push_back("record_every: must be positive");
  if (sweep && cfg.sweep) {
    if (!(cfg.sweep->min > 0.0) || !(cfg.sweep->max >= cfg.sweep->min) || !(cfg.sweep->step > 0.0)) {
      err.push_back("sweep: need 0 < min <= max and step > 0");
    }
  }
  if (cfg.t0 && cfg.t_end && !(*cfg.t_end > *cfg.t0)) err.push_back("t_end: must exceed t0");
  if (!r.ok()) return r;

  if (sweep) {
    const SweepRange s = cfg.sweep.value_or(default_sweep(cfg));
    r.notes.push_back("sweep " + std::string(kind == "gaussian" ? "Omega" : "beta") + " over [" + short_number(s.min) +
                      ", " + short_number(s.max) + "] step " + short_number(s.step));
    return r;
  }
  const PulseShape pulse = config_pulse(cfg);
  if (uses_atom(cfg.scenario)) {
    const Window w = filter_window(cfg, pulse);
    r.notes.push_back("window [" + short_number(w.t0) + ", " + short_number(w.t_end) + "] dt " + short_number(w.dt) +
                      ", " + std::to_string(std::llround((w.t_end - w.t0) / w.dt)) + " steps");
    r.notes.push_back("coverage " + percent(pulse.energy_between(w.t0, w.t_end)));
    if (pulse.energy_between(w.t0, w.t_end) < kMinCoverage) {
      err.push_back("t0, t_end: window holds " + percent(pulse.energy_between(w.t0, w.t_end)) + " of the pulse energy");
    }
  } else {
    const TimeGrid g = cfg.scenario == "feedback-shaping"
                           ? shaping_grid(pulse, cfg.omega, *cfg.kappa)
                           : propagation_grid(cavity_linear_model(cfg.omega, *cfg.kappa), pulse);
    r.notes.push_back("grid " + std::to_string(g.size) + " points, dt " + short_number(g.dt));
    r.notes.push_back("coverage " + percent(energy_coverage(pulse, g)));
  }
  return r;
}

RunResult execute(const ScenarioConfig& cfg) {
  const ValidationReport report = validate(cfg);
  if (!report.ok()) throw ConfigError(report.errors);
  Output out = [&] {
    if (cfg.scenario == "cavity-response") return run_cavity_response(cfg);
    if (cfg.scenario == "feedback-shaping") return run_feedback_shaping(cfg);
    if (cfg.scenario == "filter-trajectory") return run_filter_trajectory(cfg);
    if (cfg.scenario == "master-equation") return run_master_equation(cfg);
    if (cfg.scenario == "excitation-sweep") return run_excitation_sweep(cfg);
    return run_realizability_check(cfg);
  }();
  RunResult r;
  r.csv = out.csv.str();
  r.json = out.summary.dump(2) + "\n";
  return r;
}

RunResult run(const ScenarioConfig& cfg) {
  RunResult r = execute(cfg);
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError({"out_dir: cannot create '" + cfg.out_dir + "': " + ec.message()});
  auto emit = [&](const std::string& ext, const std::string& text) {
    const std::filesystem::path p = dir / (cfg.scenario + ext);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError({"out_dir: cannot write '" + p.string() + "'"});
    f << text;
    r.files.push_back(p.string());
  };
  if (cfg.format != OutputFormat::kJson) emit(".csv", r.csv);
  if (cfg.format != OutputFormat::kCsv) emit(".json", r.json);
  return r;
}

LinearSystemParams random_linear_params(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m, bool passive) {
  std::normal_distribution<double> g(0.0, 1.0);
  auto random = [&](Eigen::Index r, Eigen::Index c) {
    CMatrix x(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) x(i, j) = cplx(g(rng), g(rng));
    }
    return x;
  };
  LinearSystemParams p;
  const CMatrix h = random(n, n);
  p.omega_minus = 0.5 * (h + h.adjoint());
  p.c_minus = random(m, n);
  if (passive) {
    p.omega_plus = CMatrix::Zero(n, n);
    p.c_plus = CMatrix::Zero(m, n);
  } else {
    const CMatrix s = random(n, n);
    p.omega_plus = 0.5 * (s + s.transpose());
    p.c_plus = 0.3 * random(m, n);
  }
  return p;
}

}  // namespace photonflow::scenario
