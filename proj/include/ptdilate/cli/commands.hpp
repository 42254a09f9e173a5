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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "ptdilate/cli/scenario.hpp"

namespace ptdilate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Indented JSON with floats printed at twelve significant digits.
std::string render_json(const nlohmann::json& j, int indent = 2);

// CSV: t, re/im of both eigenvalues, phase label.
void cmd_spectrum(const Scenario& s, std::ostream& csv);

// CSV: t, lambda_minus, lambda_plus, valid.
void cmd_metric_scan(const Scenario& s, std::ostream& csv);

nlohmann::json cmd_bounds(const Scenario& s);

nlohmann::json cmd_breakdown(const Scenario& s, double t_max);

// CSV: t, tau entries, block-condition residuals of the dilated Hamiltonian.
void cmd_dilate(const Scenario& s, std::ostream& csv);

/// Writes the trajectory table and returns the summary. Throws BreakdownError
/// when the dilation fails inside [t_start, t_end].
nlohmann::json cmd_simulate(const Scenario& s, std::ostream& trajectory_csv);

// CSV: t, efficiency of the analytically propagated initial state.
void cmd_efficiency(const Scenario& s, std::ostream& csv);

/// Writes the four lambda_minus datasets and thresholds.json into out_dir and
/// returns the thresholds.
nlohmann::json cmd_paper_figures(const std::filesystem::path& out_dir, double grid_step = 1e-3);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptdilate::cli
