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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace photonflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-conformable matrix shapes or odd doubled-up dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Physically inadmissible model data (non-Hermitian Hamiltonian, non-unitary S, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A post-construction identity failed; indicates a bug rather than bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range scalar parameter (negative rate, gamma outside [0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this kind of input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Drift matrix is not Hurwitz, so no steady state exists.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, std::vector<std::complex<double>> offending)
      : Error(what), offending_(std::move(offending)) {}
  const std::vector<std::complex<double>>& offending_eigenvalues() const noexcept { return offending_; }

 private:
  std::vector<std::complex<double>> offending_;
};

/// Sampling window misses too much pulse energy.
class GridError : public Error {
 public:
  GridError(const std::string& what, double coverage) : Error(what), coverage_(coverage) {}
  double coverage() const noexcept { return coverage_; }

 private:
  double coverage_;
};

/// Feedback loop is singular at one or more grid frequencies.
class WellPosednessError : public Error {
 public:
  WellPosednessError(const std::string& what, std::vector<double> omegas)
      : Error(what), omegas_(std::move(omegas)) {}
  const std::vector<double>& omegas() const noexcept { return omegas_; }

 private:
  std::vector<double> omegas_;
};

/// Integration produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace photonflow
