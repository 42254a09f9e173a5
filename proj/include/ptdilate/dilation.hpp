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

#include <string_view>

#include "ptdilate/metric.hpp"
#include "ptdilate/types.hpp"

/// Hermitian tau = sqrt(eta - 1), its time derivative, the h4 block and the
/// assembled 4x4 Hermitian Hamiltonian [[h1, h2], [h2^dagger, h4]] whose
/// upper component reproduces the non-Hermitian evolution.
namespace ptdilate::dilation {

using metric::DilationParams;
using metric::MetricState;
using model::HamiltonianParams;
using solutions::SolutionBasis;

/// tau = [[d + c, a - i b], [a + i b, d - c]]
struct TauDecomp {
  double a;
  double b;
  double c;
  double d;
  Matrix2c tau;
};

/// Throws InvalidMetricError when lambda_minus < 1 - 1e-12.
TauDecomp tau_from_metric(const MetricState& ms);

/// Chain rule through (x, y, z, w) using ms.eta_dot. Throws DegenerateError
/// when lambda_minus - 1 < 1e-9, where sqrt(eta - 1) stops being smooth.
Matrix2c tau_derivative(const MetricState& ms);
Matrix2c tau_derivative(const SolutionBasis& basis, const DilationParams& d, double t);

enum class H4Mode { hermitian_part, wu_choice };

std::string_view to_string(H4Mode mode);
/// Accepts "hermitian_part" and "wu_choice"; throws ValidationError otherwise.
H4Mode parse_h4_mode(std::string_view name);

struct H4Selection {
  Matrix2c h4;
  // max |h4 - h4^dagger| / max |h4|
  double hermiticity_residual;
  bool hermitian;  // residual <= 1e-8
};

/// hermitian_part: (H + H^dagger) / 2.  wu_choice: [H + (i tau' + tau H) tau] eta^{-1}.
H4Selection h4_select(H4Mode mode, const HamiltonianParams& p, const MetricState& ms,
                      const Matrix2c& tau, const Matrix2c& tau_dot);
H4Selection h4_select(H4Mode mode, const SolutionBasis& basis, const DilationParams& d,
                      double t);

struct DilatedHamiltonian {
  Matrix2c h1;
  Matrix2c h2;
  Matrix2c h4;
  Matrix4c hh;
  H4Mode h4_mode;
  // Relative residuals: hh Hermiticity, h1 + h2 tau = H, h2^dagger + h4 tau = i tau' + tau H.
  double hermiticity_residual;
  double upper_residual;
  double lower_residual;
  double h4_hermiticity_residual;
};

/// h2 = -i tau'^dagger + H^dagger tau^dagger - tau^dagger h4,
/// h1 = H + i tau'^dagger tau - H^dagger tau^dagger tau + tau^dagger h4 tau.
DilatedHamiltonian assemble_blocks(const Matrix2c& h, const Matrix2c& tau, const Matrix2c& tau_dot,
                                   const Matrix2c& h4, H4Mode mode);

DilatedHamiltonian assemble_dilated(const SolutionBasis& basis, const DilationParams& d, double t,
                                    H4Mode mode);

/// Principal square root of a Hermitian matrix; negative eigenvalues map to
/// i sqrt(|mu|), so the result is non-Hermitian when the input is indefinite.
Matrix2c principal_sqrt(const Matrix2c& hermitian);

/// Solves tau X + X tau = rhs.
Matrix2c solve_sylvester(const Matrix2c& tau, const Matrix2c& rhs);

struct PostBreakdown {
  Matrix2c tau;
  // max |h1 - h1^dagger| / max |h1| with tau from principal_sqrt and h4 the
  // Hermitian part of H.
  double hermiticity_defect;
};

/// Defined on both sides of the breakdown time; the defect vanishes while
/// lambda_minus >= 1.
PostBreakdown post_breakdown_tau(const SolutionBasis& basis, const DilationParams& d, double t);

}  // namespace ptdilate::dilation
