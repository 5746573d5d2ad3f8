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

#include "photonflow/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "photonflow/errors.hpp"

namespace photonflow {

using json = nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size()) throw DimensionError("CsvTable: row width does not match header");
  rows_.push_back(row);
}

void CsvTable::write(std::ostream& os) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
    os << '\n';
  }
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

CsvTable pulse_table(const PulseShape& p, std::size_t stride) {
  const auto* s = p.as_sampled();
  if (s == nullptr) throw UnsupportedError("pulse_table: sample the pulse first");
  if (stride == 0) stride = 1;
  CsvTable table({"t", "re", "im"});
  for (std::size_t j = 0; j < s->values.size(); j += stride) {
    table.add_row({s->grid.at(j), s->values[j].real(), s->values[j].imag()});
  }
  return table;
}

CsvTable spectrum_table(const SpectrumView& spectrum, std::size_t stride) {
  if (stride == 0) stride = 1;
  CsvTable table({"omega", "re", "im"});
  for (std::size_t i = 0; i < spectrum.values.size(); i += stride) {
    table.add_row({spectrum.grid[i], spectrum.values[i].real(), spectrum.values[i].imag()});
  }
  return table;
}

PulseShape read_pulse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("read_pulse_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,re,im") throw ParameterError("read_pulse_csv: header must be exactly t,re,im");

  std::vector<double> t;
  std::vector<cplx> values;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    double tv, re, im;
    char c1, c2;
    if (!(row >> tv >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      throw ParameterError("read_pulse_csv: malformed row at line " + std::to_string(lineno));
    }
    t.push_back(tv);
    values.emplace_back(re, im);
  }
  if (t.size() < 2) throw ParameterError("read_pulse_csv: need at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (std::abs(t[j] - (t.front() + dt * static_cast<double>(j))) > 1e-9 * std::max(1.0, std::abs(t[j]))) {
      throw ParameterError("read_pulse_csv: time column is not uniform at row " + std::to_string(j + 2));
    }
  }
  return PulseShape::sampled(TimeGrid{t.front(), dt, t.size()}, std::move(values));
}

std::string pulse_to_json(const PulseShape& p) {
  json j;
  j["kind"] = p.kind_name();
  std::visit(
      [&j](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DecayingExp> || std::is_same_v<T, RisingExp>) {
          j["beta"] = r.beta;
        } else if constexpr (std::is_same_v<T, GaussianPulse>) {
          j["Omega"] = r.bandwidth;
          j["tau"] = r.peak_time;
        } else {
          j["t0"] = r.grid.t0;
          j["dt"] = r.grid.dt;
          std::vector<double> re, im;
          re.reserve(r.values.size());
          im.reserve(r.values.size());
          for (const cplx& v : r.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
          }
          j["re"] = std::move(re);
          j["im"] = std::move(im);
        }
      },
      p.repr());
  return j.dump();
}

PulseShape pulse_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "decaying-exp") return PulseShape::decaying_exp(j.at("beta").get<double>());
    if (kind == "rising-exp") return PulseShape::rising_exp(j.at("beta").get<double>());
    if (kind == "gaussian") return PulseShape::gaussian(j.at("Omega").get<double>(), j.value("tau", 0.0));
    if (kind == "sampled") {
      const auto re = j.at("re").get<std::vector<double>>();
      const auto im = j.at("im").get<std::vector<double>>();
      if (re.size() != im.size()) throw ParameterError("pulse_from_json: re/im length mismatch");
      std::vector<cplx> values(re.size());
      for (std::size_t i = 0; i < re.size(); ++i) values[i] = {re[i], im[i]};
      const TimeGrid grid{j.at("t0").get<double>(), j.at("dt").get<double>(), values.size()};
      return PulseShape::sampled(grid, std::move(values));
    }
    throw ParameterError("pulse_from_json: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParameterError(std::string("pulse_from_json: ") + e.what());
  }
}

std::string spectrum_to_json(const SpectrumView& s) {
  json j;
  j["d_omega"] = s.d_omega;
  j["omega_max"] = s.omega_max;
  j["t0"] = s.time_grid.t0;
  j["dt"] = s.time_grid.dt;
  std::vector<double> re, im;
  for (const cplx& v : s.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["omega"] = s.grid.values();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

}  // namespace photonflow
