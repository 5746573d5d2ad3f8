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

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "photonflow/linear_response.hpp"
#include "photonflow/pulse.hpp"

namespace photonflow {

inline constexpr double kUnitarityTol = 1e-12;

/// Lossless two-port [[s11, s12], [s21, s22]] acting on annihilation operators.
class Beamsplitter {
 public:
  /// [[sqrt(g), e^{-i phi} sqrt(1-g)], [-e^{i phi} sqrt(1-g), sqrt(g)]], 0 <= g <= 1.
  static Beamsplitter from_transmissivity(double gamma, double phi = 0.0);
  /// Arbitrary entries; ParameterError when S^dagger S deviates from I by more than kUnitarityTol.
  static Beamsplitter general(cplx s11, cplx s12, cplx s21, cplx s22);

  cplx s11() const noexcept { return s_(0, 0); }
  cplx s12() const noexcept { return s_(0, 1); }
  cplx s21() const noexcept { return s_(1, 0); }
  cplx s22() const noexcept { return s_(1, 1); }
  const Eigen::Matrix2cd& matrix() const noexcept { return s_; }
  /// Set for the transmissivity form.
  std::optional<double> gamma() const noexcept { return gamma_; }
  double unitarity_deviation() const;

 private:
  explicit Beamsplitter(const Eigen::Matrix2cd& s) : s_(s) {}
  Eigen::Matrix2cd s_;
  std::optional<double> gamma_;
};

/// Frobenius norm of S^dagger S - I.
double unitarity_deviation(const Eigen::Matrix2cd& s);

/// [b3; b1] = S [b0; b2].
std::pair<cplx, cplx> bs_apply(const Beamsplitter& bs, cplx b0, cplx b2);
/// Pointwise over two sampled spectra.
std::pair<std::vector<cplx>, std::vector<cplx>> bs_apply(const Beamsplitter& bs, const std::vector<cplx>& b0,
                                                         const std::vector<cplx>& b2);

/// (1 - sqrt g) / (1 + sqrt g).
double loop_ratio(double gamma);
/// Bare cavity: (i(w + wc) - k/2) / (i(w + wc) + k/2).
cplx cavity_response(double omega, double omega_c, double kappa);
/// Cavity closed by the transmissivity beamsplitter:
/// (-r (w + wc) i + k/2) / (r (w + wc) i + k/2).
cplx closed_loop_response(double omega, double omega_c, double kappa, double gamma);

/// Output pulse of a frequency-domain shaping operation.
struct ShapedPulse {
  TimeGrid time_grid;
  std::vector<cplx> spectrum;
  PulseShape pulse = PulseShape::decaying_exp(1.0);
  double energy = 0.0;  // rectangle-rule int |eta(t)|^2 dt
};

/// Grid wide enough for the input pulse and the bare cavity response.
TimeGrid shaping_grid(const PulseShape& input, double omega_c, double kappa);

/// eta_1: the bare cavity output.
ShapedPulse cavity_shape(double omega_c, double kappa, const PulseShape& input,
                         std::optional<TimeGrid> grid = std::nullopt);
/// eta_3: output of the cavity-in-a-loop network. gamma = 1 returns the input unchanged.
ShapedPulse closed_loop_shape(double omega_c, double kappa, double gamma, const PulseShape& input,
                              std::optional<TimeGrid> grid = std::nullopt);

/// Series connection: signal passes `first`, then `second`; Xi = Xi2 Xi1 pointwise.
TransferFunction compose_series(const TransferFunction& first, const TransferFunction& second);

/// Plant G and controller K closed by `bs`: port b1 feeds G, G feeds K, K
/// returns on b2. Result maps b0 to b3:
///   Xi = S11 + S12 (I - L S22)^{-1} L S21,  L = Xi_K Xi_G,
/// with the beamsplitter acting as s on annihilation and conj(s) on creation
/// channels. Both subsystems must be passive.
TransferFunction compose_feedback(const TransferFunction& plant, const TransferFunction& controller,
                                  const Beamsplitter& bs);

/// Reference closed-loop transfer function of the cavity-in-a-loop network on `grid`.
TransferFunction closed_loop_transfer(const FrequencyGrid& grid, double omega_c, double kappa, double gamma);

/// Port of a network component (inputs and outputs are numbered separately).
struct PortRef {
  std::size_t component = 0;
  std::size_t port = 0;
  bool operator==(const PortRef&) const = default;
};

/// Frequency-pointwise network of linear systems and beamsplitters.
///
/// Every component input is fed either by exactly one component output or by
/// an external input; every output feeds at most one input or is an external
/// output. solve() eliminates the internal wiring at each grid frequency.
class NetworkTopology {
 public:
  std::size_t add_system(std::string name, TransferFunction tf);
  std::size_t add_beamsplitter(std::string name, const Beamsplitter& bs);

  void connect(PortRef from_output, PortRef to_input);
  void set_external_inputs(std::vector<PortRef> inputs) { external_inputs_ = std::move(inputs); }
  void set_external_outputs(std::vector<PortRef> outputs) { external_outputs_ = std::move(outputs); }

  std::size_t component_count() const noexcept { return components_.size(); }
  /// Throws ParameterError describing the first wiring defect.
  void validate() const;
  /// Xi from external inputs to external outputs. WellPosednessError when
  /// I - D P is singular at some frequency.
  TransferFunction solve() const;

 private:
  struct Component {
    std::string name;
    std::variant<TransferFunction, Beamsplitter> body;
  };
  std::size_t ports(const Component& c) const;

  std::vector<Component> components_;
  std::vector<std::pair<PortRef, PortRef>> wires_;
  std::vector<PortRef> external_inputs_;
  std::vector<PortRef> external_outputs_;
};

}  // namespace photonflow
