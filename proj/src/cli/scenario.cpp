// Copyright 2026 The ptdilate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ptdilate/cli/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "ptdilate/errors.hpp"

namespace ptdilate::cli {

namespace {

using nlohmann::json;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(std::string(key) + " must be a number");
  return v.get<double>();
}

}  // namespace

void Scenario::validate() const {
  require_finite(energy, "E");
  require_finite(omega, "omega");
  require_finite(t_start, "t_start");
  require_finite(t_end, "t_end");
  require_finite(grid_step, "grid_step");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(t_start < t_end)) throw ValidationError("t_start must be smaller than t_end");
  if (!(grid_step > 0.0)) throw ValidationError("grid_step must be positive");
  if (!(d0_sq >= 0.0) || !(d1_sq >= 0.0) || !std::isfinite(d0_sq) || !std::isfinite(d1_sq)) {
    throw ValidationError("d0_sq and d1_sq must be finite and nonnegative");
  }
  for (double c : initial_state) require_finite(c, "initial_state");
  evolve::EvolutionConfig probe = tolerances;
  probe.output_grid.clear();
  probe.validate();
}

model::HamiltonianParams Scenario::params() const { return {energy, omega}; }

metric::DilationParams Scenario::dilation() const { return {d0_sq, d1_sq}; }

StateVec2 Scenario::psi0() const {
  return StateVec2(Complex(initial_state[0], initial_state[1]),
                   Complex(initial_state[2], initial_state[3]));
}

std::vector<double> Scenario::grid() const {
  const double span = t_end - t_start;
  const auto n = static_cast<long>(std::floor(span / grid_step + 1e-9));
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) times.push_back(t_start + static_cast<double>(k) * grid_step);
  if (std::abs(times.back() - t_end) <= 1e-9 * std::max(1.0, std::abs(t_end))) {
    times.back() = t_end;
  }
  return times;
}

Scenario scenario_from_json(const json& j) {
  reject_unknown(j,
                 {"E", "omega", "d0_sq", "d1_sq", "t_start", "t_end", "grid_step", "h4_mode",
                  "tolerances", "initial_state"},
                 "scenario");
  Scenario s;
  if (j.contains("E")) s.energy = number(j, "E");
  if (j.contains("omega")) s.omega = number(j, "omega");
  if (j.contains("d0_sq")) s.d0_sq = number(j, "d0_sq");
  if (j.contains("d1_sq")) s.d1_sq = number(j, "d1_sq");
  if (j.contains("t_start")) s.t_start = number(j, "t_start");
  if (j.contains("t_end")) s.t_end = number(j, "t_end");
  if (j.contains("grid_step")) s.grid_step = number(j, "grid_step");
  if (j.contains("h4_mode")) {
    if (!j["h4_mode"].is_string()) throw ValidationError("h4_mode must be a string");
    s.h4_mode = dilation::parse_h4_mode(j["h4_mode"].get<std::string>());
  }
  if (j.contains("tolerances")) {
    const json& tol = j["tolerances"];
    reject_unknown(tol, {"rel_tol", "abs_tol", "max_step"}, "tolerances");
    if (tol.contains("rel_tol")) s.tolerances.rel_tol = number(tol, "rel_tol");
    if (tol.contains("abs_tol")) s.tolerances.abs_tol = number(tol, "abs_tol");
    if (tol.contains("max_step")) s.tolerances.max_step = number(tol, "max_step");
  }
  if (j.contains("initial_state")) {
    const json& st = j["initial_state"];
    if (!st.is_array() || st.size() != 4) {
      throw ValidationError("initial_state must be an array of four numbers");
    }
    for (std::size_t k = 0; k < 4; ++k) {
      if (!st[k].is_number()) throw ValidationError("initial_state entries must be numbers");
      s.initial_state[k] = st[k].get<double>();
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

json to_json(const Scenario& s) {
  return json{{"E", s.energy},
              {"omega", s.omega},
              {"d0_sq", s.d0_sq},
              {"d1_sq", s.d1_sq},
              {"t_start", s.t_start},
              {"t_end", s.t_end},
              {"grid_step", s.grid_step},
              {"h4_mode", std::string(dilation::to_string(s.h4_mode))},
              {"tolerances",
               {{"rel_tol", s.tolerances.rel_tol},
                {"abs_tol", s.tolerances.abs_tol},
                {"max_step", s.tolerances.max_step}}},
              {"initial_state", s.initial_state}};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace ptdilate::cli
