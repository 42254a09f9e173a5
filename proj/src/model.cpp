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

#include "ptdilate/model.hpp"

#include <cmath>

#include "ptdilate/errors.hpp"

namespace ptdilate::model {

HamiltonianParams::HamiltonianParams(double energy_, double omega_)
    : energy(energy_), omega(omega_) {
  if (!std::isfinite(energy)) throw ValidationError("energy E must be finite");
  if (!std::isfinite(omega) || !(omega > 0.0)) throw ValidationError("omega must be positive");
}

Matrix2c hamiltonian(const HamiltonianParams& p, double t) {
  const Complex gain(0.0, p.omega * t);
  Matrix2c h;
  h << p.energy + gain, 1.0, 1.0, p.energy - gain;
  return h;
}

Matrix2c sigma_x() {
  Matrix2c s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

PtStructure pt_structure() { return {sigma_x()}; }

std::string_view to_string(PtPhase phase) {
  switch (phase) {
    case PtPhase::unbroken:
      return "unbroken";
    case PtPhase::exceptional_point:
      return "EP";
    case PtPhase::broken:
      return "broken";
  }
  return "unknown";
}

Spectrum instantaneous_spectrum(const HamiltonianParams& p, double t) {
  const double wt = p.omega * t;
  const double disc = 1.0 - wt * wt;
  if (std::abs(disc) < 1e-12) {
    return {p.energy, p.energy, PtPhase::exceptional_point};
  }
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    return {p.energy + root, p.energy - root, PtPhase::unbroken};
  }
  const double root = std::sqrt(-disc);
  return {Complex(p.energy, root), Complex(p.energy, -root), PtPhase::broken};
}

double ep_time(const HamiltonianParams& p) { return 1.0 / p.omega; }

double pt_symmetry_residual(const HamiltonianParams& p, double t) {
  const Matrix2c h = hamiltonian(p, t);
  const Matrix2c s = sigma_x();
  return max_abs(s * h.conjugate() * s - h);
}

double intertwining_residual(const HamiltonianParams& p, double t) {
  const Matrix2c h = hamiltonian(p, t);
  const Matrix2c s = sigma_x();
  return max_abs(s * h - h.adjoint() * s);
}

}  // namespace ptdilate::model
