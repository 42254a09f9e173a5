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

#include <functional>
#include <vector>

#include "ptdilate/dilation.hpp"
#include "ptdilate/types.hpp"

/// Adaptive integration of i v' = M(t) v for the two-level system, its dual
/// and the four-level dilated system, with per-sample diagnostics.
namespace ptdilate::evolve {

using dilation::H4Mode;
using metric::DilationParams;
using solutions::SolutionBasis;

struct EvolutionConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1e-2;
  // Output times; empty means the span endpoints.
  std::vector<double> output_grid;

  /// Throws ValidationError for nonpositive tolerances or a grid that is not
  /// strictly increasing.
  void validate() const;
};

struct TimeSpan {
  double begin;
  double end;
};

struct SampleDiagnostics {
  double norm = 0.0;
  // |<reference|upper>|^2 / (|reference|^2 |upper|^2); 1 when no reference.
  double fidelity = 1.0;
  // |upper - reference| / |reference|
  double upper_deviation = 0.0;
  // |lower - tau upper| / |state|
  double lower_consistency = 0.0;
  bool valid = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<SampleDiagnostics> diagnostics;
};

using Generator = std::function<Eigen::MatrixXcd(double)>;

/// Dormand-Prince 5(4) with dense output at cfg.output_grid. Throws
/// DomainError for a non-finite generator and ConvergenceError when the step
/// size underflows.
Trajectory integrate_linear(const Generator& generator, const Eigen::VectorXcd& psi0,
                            TimeSpan span, const EvolutionConfig& cfg);

/// Integrates the dilated state (psi0, tau(t0) psi0) under the 4x4 Hermitian
/// Hamiltonian. Diagnostics compare the upper component with the analytic
/// solution through psi0. Throws BreakdownError if the dilation fails inside
/// the span and ValidationError for a zero initial state.
Trajectory simulate_dilated(const SolutionBasis& basis, const DilationParams& d,
                            const StateVec2& psi0, TimeSpan span, const EvolutionConfig& cfg,
                            H4Mode mode);

/// <psi|psi> / <psi|eta(t)|psi>
double dilation_efficiency(const SolutionBasis& basis, const DilationParams& d,
                           const StateVec2& psi, double t);

}  // namespace ptdilate::evolve
