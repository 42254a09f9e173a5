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

#include "ptdilate/types.hpp"

/// The swept PT-symmetric two-level Hamiltonian
///   H(t) = [[E + i w t, 1], [1, E - i w t]]
/// with its instantaneous spectrum and symmetry checks.
namespace ptdilate::model {

struct HamiltonianParams {
  /// Throws ValidationError unless omega > 0 and both values are finite.
  HamiltonianParams(double energy, double omega);

  double energy;
  double omega;
};

Matrix2c hamiltonian(const HamiltonianParams& p, double t);

/// First Pauli matrix, the parity operator of the model.
Matrix2c sigma_x();

/// Parity is sigma_x; time reversal is complex conjugation.
struct PtStructure {
  Matrix2c parity;
};

PtStructure pt_structure();

enum class PtPhase { unbroken, exceptional_point, broken };

std::string_view to_string(PtPhase phase);

struct Spectrum {
  Complex upper;
  Complex lower;
  PtPhase phase;
};

/// E +/- sqrt(1 - (w t)^2); |1 - (w t)^2| < 1e-12 is labeled as the EP.
Spectrum instantaneous_spectrum(const HamiltonianParams& p, double t);

double ep_time(const HamiltonianParams& p);

/// max |sigma_x conj(H) sigma_x - H|
double pt_symmetry_residual(const HamiltonianParams& p, double t);

/// max |sigma_x H - H^dagger sigma_x|
double intertwining_residual(const HamiltonianParams& p, double t);

}  // namespace ptdilate::model
