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

#include "ptdilate/solutions.hpp"

#include <cmath>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "ptdilate/errors.hpp"
#include "ptdilate/specfun.hpp"

namespace ptdilate::solutions {
namespace {

using specfun::Ray;
using specfun::RayArgument;
using specfun::WhittakerIndex;

constexpr double kQuarter = 0.25;

WideComplex wide_phase(const WideReal& angle) { return WideComplex(cos(angle), sin(angle)); }

WideVec2 scaled(const WideComplex& factor, const WideComplex& up, const WideComplex& down) {
  return {factor * up, factor * down};
}

}  // namespace

WideBasisPair x_basis_whittaker_wide(const HamiltonianParams& p, double t) {
  if (!(t >= 0.0)) throw DomainError("Whittaker basis is defined for t >= 0");
  const double z = p.omega * t * t;
  if (z > kWhittakerHorizonArgument) {
    throw OverflowError("Whittaker basis evaluated beyond w t^2 = " +
                        std::to_string(kWhittakerHorizonArgument));
  }
  const double kappa = -kQuarter + kQuarter / p.omega;
  const double kappa_lower = kQuarter + kQuarter / p.omega;
  const RayArgument positive(z, Ray::positive);
  const RayArgument rotated(z, Ray::rotated);

  const WideComplex r0 = specfun::whittaker_w_reduced_wide(WhittakerIndex(kappa, kQuarter), positive);
  const WideComplex r0_lower =
      specfun::whittaker_w_reduced_wide(WhittakerIndex(kappa_lower, kQuarter), positive);
  const WideComplex r1 = specfun::whittaker_w_reduced_wide(WhittakerIndex(-kappa, kQuarter), rotated);
  const WideComplex r1_lower =
      specfun::whittaker_w_reduced_wide(WhittakerIndex(-kappa_lower, kQuarter), rotated);

  const WideReal omega = p.omega;
  const WideReal root_omega = sqrt(omega);
  // e^{-iEt}/sqrt(t) * z^{1/4} = e^{-iEt} w^{1/4}
  const WideComplex prefactor =
      wide_phase(-WideReal(p.energy) * WideReal(t)) * WideComplex(pow(omega, WideReal(kQuarter)));
  const WideComplex rotated_prefactor =
      prefactor * wide_phase(boost::math::constants::pi<WideReal>() / 4);

  WideBasisPair out;
  out.first = scaled(prefactor, r0, WideComplex(0, -2 * root_omega) * r0_lower);
  out.second = scaled(rotated_prefactor, r1, r1_lower / WideComplex(2 * root_omega));
  return out;
}

BasisPair x_basis_whittaker(const HamiltonianParams& p, double t) {
  const WideBasisPair w = x_basis_whittaker_wide(p, t);
  return {to_state(w.first), to_state(w.second)};
}

WideBasisPair x_basis_closed_half_wide(double energy, double t) {
  if (!(std::abs(t) <= kClosedFormHorizon)) {
    throw OverflowError("closed-form basis evaluated beyond |t| = 6");
  }
  const WideReal tw = t;
  const WideReal root2 = sqrt(WideReal(2));
  const WideReal erfi = specfun::erfi_paper_wide(tw / root2);
  const WideReal gamma_im = -root2 * erfi;  // gamma = i * gamma_im
  const WideReal delta = exp(tw * tw / 2) - root2 * tw * erfi;
  const WideComplex envelope = wide_phase(-WideReal(energy) * tw) * WideComplex(exp(-tw * tw / 4));

  WideBasisPair out;
  out.first = scaled(envelope, WideComplex(1), WideComplex(0, -tw));
  out.second = scaled(envelope, WideComplex(0, gamma_im), WideComplex(delta));
  return out;
}

BasisPair x_basis_closed_half(double energy, double t) {
  if (!(std::abs(t) <= kClosedFormHorizon)) {
    throw OverflowError("closed-form basis evaluated beyond |t| = 6");
  }
  if (std::abs(t) > kClosedFormWideFrom) {
    const WideBasisPair w = x_basis_closed_half_wide(energy, t);
    return {to_state(w.first), to_state(w.second)};
  }
  const double root2 = std::sqrt(2.0);
  const double erfi = specfun::erfi_paper(t / root2);
  const Complex gamma(0.0, -root2 * erfi);
  const double delta = std::exp(t * t / 2) - root2 * t * erfi;
  const Complex envelope = std::polar(std::exp(-t * t / 4), -energy * t);
  return {envelope * StateVec2(1.0, Complex(0.0, -t)), envelope * StateVec2(gamma, delta)};
}

BasisPair dual_of(const BasisPair& x) {
  return {StateVec2(x.second(1), x.second(0)), StateVec2(x.first(1), x.first(0))};
}

WideBasisPair dual_of(const WideBasisPair& x) {
  return {{x.second.down, x.second.up}, {x.first.down, x.first.up}};
}

SolutionBasis::SolutionBasis(const HamiltonianParams& p)
    : SolutionBasis(p, p.omega == 0.5 ? BasisRepresentation::closed_form_half
                                      : BasisRepresentation::whittaker_general) {}

SolutionBasis::SolutionBasis(const HamiltonianParams& p, BasisRepresentation representation)
    : params_(p), representation_(representation) {
  if (representation_ == BasisRepresentation::closed_form_half && p.omega != 0.5) {
    throw ValidationError("closed-form basis requires omega == 1/2");
  }
}

BasisPair SolutionBasis::x(double t) const {
  if (representation_ == BasisRepresentation::closed_form_half) {
    return x_basis_closed_half(params_.energy, t);
  }
  return x_basis_whittaker(params_, t);
}

BasisPair SolutionBasis::y(double t) const { return dual_of(x(t)); }

WideBasisPair SolutionBasis::x_wide(double t) const {
  if (representation_ == BasisRepresentation::closed_form_half) {
    return x_basis_closed_half_wide(params_.energy, t);
  }
  return x_basis_whittaker_wide(params_, t);
}

WideBasisPair SolutionBasis::y_wide(double t) const { return dual_of(x_wide(t)); }

double SolutionBasis::t_min() const {
  return representation_ == BasisRepresentation::closed_form_half ? -kClosedFormHorizon : 0.0;
}

double SolutionBasis::t_max() const {
  if (representation_ == BasisRepresentation::closed_form_half) return kClosedFormHorizon;
  return std::sqrt(kWhittakerHorizonArgument / params_.omega);
}

void SolutionBasis::check_time(double t) const {
  if (!std::isfinite(t) || t < t_min()) {
    throw DomainError("time " + std::to_string(t) + " is outside the basis range");
  }
  if (t > t_max()) {
    throw OverflowError("time " + std::to_string(t) + " is beyond the numeric horizon " +
                        std::to_string(t_max()));
  }
}

BasisPair y_basis(const HamiltonianParams& p, double t) { return SolutionBasis(p).y(t); }

Complex wronskian(const SolutionBasis& basis, double t) {
  const BasisPair x = basis.x(t);
  const Complex det = x.first(0) * x.second(1) - x.second(0) * x.first(1);
  return det * std::polar(1.0, 2.0 * basis.params().energy * t);
}

double ode_residual(const HamiltonianParams& p, const std::function<StateVec2(double)>& v,
                    double t, Equation eq) {
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const StateVec2 derivative = (v(t + h) - v(t - h)) / (2.0 * h);
  const Matrix2c h_t = model::hamiltonian(p, t);
  const Matrix2c generator = eq == Equation::primal ? h_t : Matrix2c(h_t.adjoint());
  const StateVec2 residual = Complex(0.0, 1.0) * derivative - generator * v(t);
  return residual.cwiseAbs().maxCoeff();
}

StateVec2 propagate_analytic(const SolutionBasis& basis, const StateVec2& psi0, double t0,
                             double t) {
  const BasisPair start = basis.x(t0);
  Matrix2c columns;
  columns << start.first, start.second;
  const StateVec2 coeffs = columns.partialPivLu().solve(psi0);
  const BasisPair now = basis.x(t);
  return coeffs(0) * now.first + coeffs(1) * now.second;
}

}  // namespace ptdilate::solutions
