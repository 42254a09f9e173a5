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


#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptdilate/dilation.hpp"
#include "ptdilate/evolve.hpp"
#include "ptdilate/metric.hpp"
#include "ptdilate/model.hpp"
#include "ptdilate/types.hpp"

namespace ptdilate::cli {

/// Parameters shared by all subcommands. Missing keys keep these defaults.
struct Scenario {
  double energy = 1.0;
  double omega = 0.5;
  double d0_sq = 3.5;
  double d1_sq = 238.0;
  double t_start = 0.0;
  double t_end = 4.0;
  double grid_step = 0.01;
  dilation::H4Mode h4_mode = dilation::H4Mode::hermitian_part;
  evolve::EvolutionConfig tolerances;
  // Re and Im of the upper component, then of the lower component.
  std::array<double, 4> initial_state{1.0, 0.0, 0.0, 0.0};

  /// Throws ValidationError when a field is out of range.
  void validate() const;

  model::HamiltonianParams params() const;
  metric::DilationParams dilation() const;
  StateVec2 psi0() const;
  /// t_start, t_start + grid_step, ... up to t_end (inclusive when it lands on the grid).
  std::vector<double> grid() const;
};

/// Throws ValidationError on unknown keys, wrong types or invalid values.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& s);

/// Twelve significant digits, '.' separator.
std::string format_number(double v);

}  // namespace ptdilate::cli
