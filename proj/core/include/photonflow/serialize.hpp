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

#include <iosfwd>
#include <string>
#include <vector>

#include "photonflow/pulse.hpp"

namespace photonflow {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

/// Column-oriented CSV writer; floats always go out at 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Columns "t","re","im". `stride` > 1 keeps every stride-th sample.
CsvTable pulse_table(const PulseShape& sampled, std::size_t stride = 1);
/// Columns "omega","re","im".
CsvTable spectrum_table(const SpectrumView& spectrum, std::size_t stride = 1);

/// Reads a "t","re","im" CSV with a uniform time column back into a sampled pulse.
PulseShape read_pulse_csv(std::istream& is);

/// {"kind":"sampled","t0":..,"dt":..,"re":[..],"im":[..]} for sampled pulses,
/// parameter objects for analytic kinds.
std::string pulse_to_json(const PulseShape& p);
PulseShape pulse_from_json(const std::string& text);
std::string spectrum_to_json(const SpectrumView& spectrum);

}  // namespace photonflow
