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

#include "photonflow/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "photonflow/errors.hpp"

namespace photonflow {

namespace {

constexpr double kLoopRcondTol = 1e-12;

void require_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    std::ostringstream os;
    os << "beamsplitter gamma must lie in [0, 1], got " << gamma;
    throw ParameterError(os.str());
  }
}

// s on the annihilation block, conj(s) on the creation block.
CMatrix doubled_scalar(cplx s, Eigen::Index m) {
  CMatrix out = CMatrix::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = s * CMatrix::Identity(m, m);
  out.bottomRightCorner(m, m) = std::conj(s) * CMatrix::Identity(m, m);
  return out;
}

CMatrix doubled_bs(const Beamsplitter& bs) {
  CMatrix out = CMatrix::Zero(4, 4);
  out.topLeftCorner(2, 2) = bs.matrix();
  out.bottomRightCorner(2, 2) = bs.matrix().conjugate();
  return out;
}

ShapedPulse shape(const PulseShape& input, const TimeGrid& grid, const auto& gain) {
  const SpectrumView in = fft_spectrum(input, grid);
  ShapedPulse out;
  out.time_grid = grid;
  out.spectrum.resize(in.values.size());
  for (std::size_t i = 0; i < in.values.size(); ++i) out.spectrum[i] = gain(in.grid[i]) * in.values[i];
  auto samples = inverse_transform(out.spectrum, grid);
  out.energy = riemann_energy(samples, grid.dt);
  out.pulse = PulseShape::sampled(grid, std::move(samples));
  return out;
}

}  // namespace

double unitarity_deviation(const Eigen::Matrix2cd& s) {
  return (s.adjoint() * s - Eigen::Matrix2cd::Identity()).norm();
}

Beamsplitter Beamsplitter::from_transmissivity(double gamma, double phi) {
  require_gamma(gamma);
  const double t = std::sqrt(gamma);
  const double r = std::sqrt(1.0 - gamma);
  Eigen::Matrix2cd s;
  s << t, std::polar(r, -phi), -std::polar(r, phi), t;
  Beamsplitter bs(s);
  bs.gamma_ = gamma;
  return bs;
}

Beamsplitter Beamsplitter::general(cplx s11, cplx s12, cplx s21, cplx s22) {
  Eigen::Matrix2cd s;
  s << s11, s12, s21, s22;
  const double dev = photonflow::unitarity_deviation(s);
  if (!(dev <= kUnitarityTol)) {
    std::ostringstream os;
    os << "beamsplitter is not unitary: ||S^dagger S - I|| = " << dev;
    throw ParameterError(os.str());
  }
  return Beamsplitter(s);
}

double Beamsplitter::unitarity_deviation() const { return photonflow::unitarity_deviation(s_); }

std::pair<cplx, cplx> bs_apply(const Beamsplitter& bs, cplx b0, cplx b2) {
  return {bs.s11() * b0 + bs.s12() * b2, bs.s21() * b0 + bs.s22() * b2};
}

std::pair<std::vector<cplx>, std::vector<cplx>> bs_apply(const Beamsplitter& bs, const std::vector<cplx>& b0,
                                                         const std::vector<cplx>& b2) {
  if (b0.size() != b2.size()) throw DimensionError("bs_apply: input spectra differ in length");
  std::vector<cplx> b3(b0.size()), b1(b0.size());
  for (std::size_t i = 0; i < b0.size(); ++i) std::tie(b3[i], b1[i]) = bs_apply(bs, b0[i], b2[i]);
  return {std::move(b3), std::move(b1)};
}

double loop_ratio(double gamma) {
  require_gamma(gamma);
  const double t = std::sqrt(gamma);
  return (1.0 - t) / (1.0 + t);
}

cplx cavity_response(double omega, double omega_c, double kappa) {
  const cplx x(0.0, omega + omega_c);
  return (x - 0.5 * kappa) / (x + 0.5 * kappa);
}

cplx closed_loop_response(double omega, double omega_c, double kappa, double gamma) {
  const double r = loop_ratio(gamma);
  const cplx x(0.0, r * (omega + omega_c));
  return (-x + 0.5 * kappa) / (x + 0.5 * kappa);
}

TimeGrid shaping_grid(const PulseShape& input, double omega_c, double kappa) {
  if (!(kappa > 0.0)) throw ParameterError("shaping: kappa must be positive");
  return default_grid(input, std::hypot(omega_c, 0.5 * kappa), 0.5 * kappa);
}

ShapedPulse cavity_shape(double omega_c, double kappa, const PulseShape& input, std::optional<TimeGrid> grid) {
  const TimeGrid g = grid ? *grid : shaping_grid(input, omega_c, kappa);
  return shape(input, g, [&](double w) { return cavity_response(w, omega_c, kappa); });
}

ShapedPulse closed_loop_shape(double omega_c, double kappa, double gamma, const PulseShape& input,
                              std::optional<TimeGrid> grid) {
  require_gamma(gamma);
  const TimeGrid g = grid ? *grid : shaping_grid(input, omega_c, kappa);
  if (gamma == 1.0) return shape(input, g, [](double) { return cplx(1.0, 0.0); });
  return shape(input, g, [&](double w) { return closed_loop_response(w, omega_c, kappa, gamma); });
}

TransferFunction compose_series(const TransferFunction& first, const TransferFunction& second) {
  if (!first.grid().same_as(second.grid())) throw DimensionError("compose_series: frequency grids differ");
  if (first.channels() != second.channels()) throw DimensionError("compose_series: channel counts differ");
  std::vector<CMatrix> values(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) values[i] = second.full(i) * first.full(i);
  return {first.grid(), std::move(values), first.passive() && second.passive()};
}

TransferFunction compose_feedback(const TransferFunction& plant, const TransferFunction& controller,
                                  const Beamsplitter& bs) {
  if (!plant.grid().same_as(controller.grid())) throw DimensionError("compose_feedback: frequency grids differ");
  if (plant.channels() != controller.channels()) throw DimensionError("compose_feedback: channel counts differ");
  if (!plant.passive() || !controller.passive()) {
    throw UnsupportedError("compose_feedback: only passive plants and controllers are supported");
  }
  const Eigen::Index m = plant.channels();
  if (bs.gamma() && *bs.gamma() == 1.0) return TransferFunction::identity(plant.grid(), m);

  const CMatrix s11 = doubled_scalar(bs.s11(), m);
  const CMatrix s12 = doubled_scalar(bs.s12(), m);
  const CMatrix s21 = doubled_scalar(bs.s21(), m);
  const CMatrix s22 = doubled_scalar(bs.s22(), m);
  const CMatrix eye = CMatrix::Identity(2 * m, 2 * m);

  std::vector<CMatrix> values(plant.size());
  std::vector<double> singular;
  for (std::size_t i = 0; i < plant.size(); ++i) {
    const CMatrix loop = controller.full(i) * plant.full(i);
    Eigen::PartialPivLU<CMatrix> lu(eye - loop * s22);
    if (!(lu.rcond() > kLoopRcondTol)) {
      singular.push_back(plant.grid()[i]);
      continue;
    }
    values[i] = s11 + s12 * lu.solve(loop * s21);
  }
  if (!singular.empty()) {
    std::ostringstream os;
    os << "compose_feedback: I - loop gain is singular at " << singular.size() << " frequencies, first w = "
       << singular.front();
    throw WellPosednessError(os.str(), std::move(singular));
  }
  return {plant.grid(), std::move(values), true};
}

TransferFunction closed_loop_transfer(const FrequencyGrid& grid, double omega_c, double kappa, double gamma) {
  require_gamma(gamma);
  if (!(kappa > 0.0)) throw ParameterError("closed_loop_transfer: kappa must be positive");
  std::vector<CMatrix> values(grid.size(), CMatrix::Zero(2, 2));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i](0, 0) = gamma == 1.0 ? 1.0 : closed_loop_response(grid[i], omega_c, kappa, gamma);
    values[i](1, 1) = gamma == 1.0 ? 1.0 : std::conj(closed_loop_response(-grid[i], omega_c, kappa, gamma));
  }
  return {grid, std::move(values), true};
}

std::size_t NetworkTopology::add_system(std::string name, TransferFunction tf) {
  components_.push_back({std::move(name), std::move(tf)});
  return components_.size() - 1;
}

std::size_t NetworkTopology::add_beamsplitter(std::string name, const Beamsplitter& bs) {
  components_.push_back({std::move(name), bs});
  return components_.size() - 1;
}

void NetworkTopology::connect(PortRef from_output, PortRef to_input) { wires_.emplace_back(from_output, to_input); }

std::size_t NetworkTopology::ports(const Component& c) const {
  if (const auto* tf = std::get_if<TransferFunction>(&c.body)) return static_cast<std::size_t>(tf->channels());
  return 2;
}

void NetworkTopology::validate() const {
  auto check_ref = [this](const PortRef& p, const char* role) {
    if (p.component >= components_.size()) {
      throw ParameterError(std::string("network: ") + role + " refers to missing component " +
                           std::to_string(p.component));
    }
    if (p.port >= ports(components_[p.component])) {
      throw ParameterError(std::string("network: ") + role + " refers to missing port " + std::to_string(p.port) +
                           " of '" + components_[p.component].name + "'");
    }
  };
  if (external_inputs_.size() != external_outputs_.size()) {
    throw ParameterError("network: external input and output counts differ");
  }
  for (const auto& [from, to] : wires_) {
    check_ref(from, "wire source");
    check_ref(to, "wire target");
  }
  for (const auto& p : external_inputs_) check_ref(p, "external input");
  for (const auto& p : external_outputs_) check_ref(p, "external output");

  for (std::size_t c = 0; c < components_.size(); ++c) {
    for (std::size_t k = 0; k < ports(components_[c]); ++k) {
      const PortRef p{c, k};
      const auto fed = std::count_if(wires_.begin(), wires_.end(), [&](const auto& w) { return w.second == p; }) +
                       std::count(external_inputs_.begin(), external_inputs_.end(), p);
      const auto used = std::count_if(wires_.begin(), wires_.end(), [&](const auto& w) { return w.first == p; }) +
                        std::count(external_outputs_.begin(), external_outputs_.end(), p);
      if (fed != 1) {
        throw ParameterError("network: input " + std::to_string(k) + " of '" + components_[c].name + "' is fed " +
                             std::to_string(fed) + " times");
      }
      if (used != 1) {
        throw ParameterError("network: output " + std::to_string(k) + " of '" + components_[c].name + "' is used " +
                             std::to_string(used) + " times");
      }
    }
  }
}

TransferFunction NetworkTopology::solve() const {
  validate();
  const FrequencyGrid* grid = nullptr;
  bool passive = true;
  for (const auto& c : components_) {
    if (const auto* tf = std::get_if<TransferFunction>(&c.body)) {
      if (grid == nullptr) grid = &tf->grid();
      else if (!grid->same_as(tf->grid())) throw DimensionError("network: component grids differ");
      passive = passive && tf->passive();
    }
  }
  if (grid == nullptr) throw ParameterError("network: needs at least one linear system to fix the frequency grid");

  // Each component occupies a block of 2p global ports ordered [annihilation, creation].
  std::vector<std::size_t> offset(components_.size() + 1, 0);
  for (std::size_t c = 0; c < components_.size(); ++c) offset[c + 1] = offset[c] + 2 * ports(components_[c]);
  const auto total = static_cast<Eigen::Index>(offset.back());
  auto index = [&](const PortRef& p, int creation) {
    return static_cast<Eigen::Index>(offset[p.component] + creation * ports(components_[p.component]) + p.port);
  };
  const auto q = static_cast<Eigen::Index>(external_inputs_.size());

  CMatrix wiring = CMatrix::Zero(total, total);
  for (const auto& [from, to] : wires_) {
    for (int k = 0; k < 2; ++k) wiring(index(to, k), index(from, k)) = 1.0;
  }
  CMatrix inject = CMatrix::Zero(total, 2 * q);
  CMatrix extract = CMatrix::Zero(2 * q, total);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (int k = 0; k < 2; ++k) {
      inject(index(external_inputs_[j], k), k * q + j) = 1.0;
      extract(k * q + j, index(external_outputs_[j], k)) = 1.0;
    }
  }

  const CMatrix eye = CMatrix::Identity(total, total);
  std::vector<CMatrix> values(grid->size());
  std::vector<double> singular;
  CMatrix blocks = CMatrix::Zero(total, total);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const auto o = static_cast<Eigen::Index>(offset[c]);
      const auto w = static_cast<Eigen::Index>(offset[c + 1] - offset[c]);
      if (const auto* tf = std::get_if<TransferFunction>(&components_[c].body)) {
        blocks.block(o, o, w, w) = tf->full(i);
      } else {
        blocks.block(o, o, w, w) = doubled_bs(std::get<Beamsplitter>(components_[c].body));
      }
    }
    Eigen::PartialPivLU<CMatrix> lu(eye - blocks * wiring);
    if (!(lu.rcond() > kLoopRcondTol)) {
      singular.push_back((*grid)[i]);
      continue;
    }
    values[i] = extract * lu.solve(blocks * inject);
  }
  if (!singular.empty()) {
    std::ostringstream os;
    os << "network: interconnection is singular at " << singular.size() << " frequencies, first w = "
       << singular.front();
    throw WellPosednessError(os.str(), std::move(singular));
  }
  return {*grid, std::move(values), passive};
}

}  // namespace photonflow
