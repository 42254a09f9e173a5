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

#include "ptdilate/types.hpp"

/// Special functions needed by the analytic solutions of the swept
/// two-level Hamiltonian: Whittaker W on the positive real ray and on the
/// ray rotated by e^{i pi}, log-Gamma, Kummer's M series, Hermite
/// polynomials and the prefactor-free imaginary error function.
namespace ptdilate::specfun {

/// Above this argument magnitude whittaker_w uses the large-argument
/// expansion instead of the connection formula.
inline constexpr double kSeriesCrossover = 30.0;

/// Smallest magnitude accepted by the leading-order large-argument form.
inline constexpr double kAsymptoticThreshold = 10.0;

struct WhittakerIndex {
  /// Throws DomainError when 2*mu is an integer.
  WhittakerIndex(double kappa, double mu);

  double kappa;
  double mu;
};

enum class Ray { positive, rotated };

/// The point magnitude * e^{i pi [ray == rotated]} on one of the two rays.
struct RayArgument {
  /// Throws DomainError for negative or non-finite magnitude.
  RayArgument(double magnitude, Ray ray);

  double magnitude;
  Ray ray;
};

/// Principal-branch log-Gamma (imaginary part in (-pi, pi]).
Complex ln_gamma(Complex z);

/// Kummer's confluent hypergeometric series M(a, b, z) for |z| <= 50.
Complex kummer_m(Complex a, Complex b, Complex z);

/// W_{kappa,mu}(z); dispatches on kSeriesCrossover.
Complex whittaker_w(const WhittakerIndex& idx, const RayArgument& z);

/// Connection-formula route through the two M-type solutions.
Complex whittaker_w_series(const WhittakerIndex& idx, const RayArgument& z);

/// Large-argument expansion, summed to its smallest term.
Complex whittaker_w_expansion(const WhittakerIndex& idx, const RayArgument& z);

/// Leading order only: e^{-z/2} z^kappa.
Complex whittaker_asymptotic(const WhittakerIndex& idx, const RayArgument& z);

/// W_{kappa,mu}(z) * z^{mu - 1/2}, finite at z = 0. Same branch rules as
/// whittaker_w.
WideComplex whittaker_w_reduced_wide(const WhittakerIndex& idx, const RayArgument& z);

/// Integral of e^{s^2} from 0 to x (no 2/sqrt(pi) prefactor). |x| <= 20.
double erfi_paper(double x);
WideReal erfi_paper_wide(const WideReal& x);

/// Physicists' Hermite polynomial, n <= 50.
double hermite_poly(int n, double x);

}  // namespace ptdilate::specfun
