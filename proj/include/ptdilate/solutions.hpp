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

#include "ptdilate/model.hpp"
#include "ptdilate/types.hpp"

/// Fundamental solutions x0, x1 of i x' = H x and the dual solutions
/// y0 = sigma_x x1, y1 = sigma_x x0 of i y' = H^dagger y.
namespace ptdilate::solutions {

using model::HamiltonianParams;

enum class BasisRepresentation { whittaker_general, closed_form_half };

struct BasisPair {
  StateVec2 first;
  StateVec2 second;
};

struct WideBasisPair {
  WideVec2 first;
  WideVec2 second;
};

inline constexpr double kClosedFormHorizon = 6.0;
// Beyond this |t| the closed-form delta is accumulated in extended precision.
inline constexpr double kClosedFormWideFrom = 3.0;
// Whittaker basis is evaluated for w t^2 up to this value.
inline constexpr double kWhittakerHorizonArgument = 600.0;

/// Whittaker form for any omega, t >= 0. Exact at t = 0: the 1/sqrt(t)
/// prefactor is absorbed into W(z) z^{-1/4}.
BasisPair x_basis_whittaker(const HamiltonianParams& p, double t);
WideBasisPair x_basis_whittaker_wide(const HamiltonianParams& p, double t);

/// Elementary form at omega = 1/2, normalized so x0(0) = (1,0), x1(0) = (0,1).
BasisPair x_basis_closed_half(double energy, double t);
WideBasisPair x_basis_closed_half_wide(double energy, double t);

/// sigma_x applied with the index swap: (x0, x1) -> (sigma_x x1, sigma_x x0).
BasisPair dual_of(const BasisPair& x);
WideBasisPair dual_of(const WideBasisPair& x);

class SolutionBasis {
 public:
  /// Closed form when omega == 1/2 exactly, Whittaker form otherwise.
  explicit SolutionBasis(const HamiltonianParams& p);
  SolutionBasis(const HamiltonianParams& p, BasisRepresentation representation);

  const HamiltonianParams& params() const { return params_; }
  BasisRepresentation representation() const { return representation_; }

  BasisPair x(double t) const;
  BasisPair y(double t) const;
  WideBasisPair x_wide(double t) const;
  WideBasisPair y_wide(double t) const;

  double t_min() const;
  double t_max() const;
  /// Throws DomainError below t_min and OverflowError above t_max.
  void check_time(double t) const;

 private:
  HamiltonianParams params_;
  BasisRepresentation representation_;
};

/// Dual basis in the canonical representation for p.
BasisPair y_basis(const HamiltonianParams& p, double t);

/// det[x0(t), x1(t)] * e^{2 i E t}; independent of t.
Complex wronskian(const SolutionBasis& basis, double t);

enum class Equation { primal, dual };

/// max |i v'(t) - M v(t)| with M = H (primal) or H^dagger (dual) and v' from
/// a central difference of step 1e-6 * max(1, |t|).
double ode_residual(const HamiltonianParams& p, const std::function<StateVec2(double)>& v,
                    double t, Equation eq);

/// The solution through psi0 at t0, expanded in the basis and evaluated at t.
StateVec2 propagate_analytic(const SolutionBasis& basis, const StateVec2& psi0, double t0,
                             double t);

}  // namespace ptdilate::solutions
