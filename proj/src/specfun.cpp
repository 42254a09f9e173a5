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

#include "ptdilate/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ptdilate/errors.hpp"

namespace ptdilate::specfun {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxSeriesTerms = 10000;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series for Re z >= 0.5 after upward shift to Re z >= 15.
Complex ln_gamma_right(Complex z) {
  static constexpr std::array<double, 8> kStirling = {
      1.0 / 12.0,     -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,   -691.0 / 360360.0,   1.0 / 156.0,  -3617.0 / 122400.0};
  Complex shift_log = 0.0;
  while (z.real() < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift_log;
}

const WideReal& wide_pi() {
  static const WideReal pi = boost::math::constants::pi<WideReal>();
  return pi;
}

WideComplex wide_polar(const WideReal& r, const WideReal& theta) {
  return WideComplex(r * cos(theta), r * sin(theta));
}

// e^{i pi p} for the rotated ray, 1 otherwise.
WideComplex ray_phase(Ray ray, const WideReal& p) {
  if (ray == Ray::positive) return WideComplex(1);
  return wide_polar(WideReal(1), wide_pi() * p);
}

// 1/Gamma(x), zero at the poles.
WideReal reciprocal_gamma(const WideReal& x) {
  if (x <= 0 && x == floor(x)) return WideReal(0);
  return 1 / boost::math::tgamma(x);
}

// M(a, b, x) for real x >= 0 in extended precision.
WideReal kummer_series_wide(const WideReal& a, const WideReal& b, const WideReal& x) {
  static const WideReal kCutoff("1e-45");
  WideReal sum = 1;
  WideReal term = 1;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= (a + n) * x / ((b + n) * (n + 1));
    sum += term;
    if (term == 0 || abs(term) < kCutoff * abs(sum)) return sum;
  }
  throw ConvergenceError("Kummer series did not converge");
}

// W * z^{mu - 1/2} from the connection formula; valid at x = 0.
WideComplex reduced_series_wide(const WhittakerIndex& idx, const RayArgument& z) {
  const WideReal kappa = idx.kappa;
  const WideReal mu = idx.mu;
  const WideReal x = z.magnitude;
  const WideReal a1 = WideReal(0.5) + mu - kappa;
  const WideReal b1 = 1 + 2 * mu;
  const WideReal a2 = WideReal(0.5) - mu - kappa;
  const WideReal b2 = 1 - 2 * mu;
  const WideReal c1 = boost::math::tgamma(WideReal(-2 * mu)) * reciprocal_gamma(a2);
  const WideReal c2 = boost::math::tgamma(WideReal(2 * mu)) * reciprocal_gamma(a1);

  // Kummer's transformation keeps the rotated-ray series free of sign changes.
  WideReal m1;
  WideReal m2;
  if (z.ray == Ray::positive) {
    m1 = c1 == 0 ? WideReal(0) : kummer_series_wide(a1, b1, x);
    m2 = c2 == 0 ? WideReal(0) : kummer_series_wide(a2, b2, x);
  } else {
    m1 = c1 == 0 ? WideReal(0) : kummer_series_wide(b1 - a1, b1, x);
    m2 = c2 == 0 ? WideReal(0) : kummer_series_wide(b2 - a2, b2, x);
  }
  const WideReal decay = exp(-x / 2);
  const WideReal x2mu = x == 0 ? WideReal(0) : pow(x, 2 * mu);
  const WideComplex first = ray_phase(z.ray, 2 * mu) * WideComplex(c1 * x2mu * m1);
  return WideComplex(decay) * (first + WideComplex(c2 * m2));
}

WideComplex expansion_wide(const WhittakerIndex& idx, const RayArgument& z) {
  static const WideReal kCutoff("1e-45");
  const WideReal kappa = idx.kappa;
  const WideReal mu = idx.mu;
  const WideReal x = z.magnitude;
  const WideReal a1 = WideReal(0.5) + mu - kappa;
  const WideReal a2 = WideReal(0.5) - mu - kappa;
  // (-z)^{-1} is -1/x on the positive ray and +1/x on the rotated one.
  const WideReal step = (z.ray == Ray::positive ? WideReal(-1) : WideReal(1)) / x;

  WideReal sum = 1;
  WideReal term = 1;
  for (int s = 0; s < 500; ++s) {
    const WideReal next = term * (a1 + s) * (a2 + s) / (s + 1) * step;
    if (next == 0 || abs(next) > abs(term)) break;
    sum += next;
    term = next;
    if (abs(term) < kCutoff * abs(sum)) break;
  }
  const WideReal exponent = z.ray == Ray::positive ? -x / 2 : x / 2;
  return ray_phase(z.ray, kappa) * WideComplex(exp(exponent) * pow(x, kappa) * sum);
}

// z^p on the given ray.
WideComplex ray_power(const RayArgument& z, const WideReal& p) {
  return ray_phase(z.ray, p) * WideComplex(pow(WideReal(z.magnitude), p));
}

template <typename Real>
Real erfi_series(const Real& x, const Real& cutoff) {
  using std::abs;
  const Real ax = abs(x);
  const Real x2 = ax * ax;
  Real term = ax;
  Real sum = ax;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    term *= x2 / n;
    const Real contrib = term / (2 * n + 1);
    sum += contrib;
    if (contrib <= cutoff * sum) break;
  }
  return x < 0 ? Real(-sum) : sum;
}

}  // namespace

WhittakerIndex::WhittakerIndex(double kappa_, double mu_) : kappa(kappa_), mu(mu_) {
  if (!std::isfinite(kappa) || !std::isfinite(mu)) {
    throw DomainError("Whittaker index must be finite");
  }
  if (2.0 * mu == std::floor(2.0 * mu)) {
    throw DomainError("Whittaker index 2*mu must not be an integer");
  }
}

RayArgument::RayArgument(double magnitude_, Ray ray_) : magnitude(magnitude_), ray(ray_) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw DomainError("ray argument magnitude must be finite and nonnegative");
  }
}

Complex ln_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("ln_gamma: pole at nonpositive integer " + std::to_string(z.real()));
  }
  Complex value;
  if (z.real() < 0.5) {
    value = std::log(kPi) - std::log(std::sin(kPi * z)) - ln_gamma_right(1.0 - z);
  } else {
    value = ln_gamma_right(z);
  }
  double im = std::remainder(value.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {value.real(), im};
}

Complex kummer_m(Complex a, Complex b, Complex z) {
  if (is_nonpositive_integer(b)) throw PoleError("kummer_m: b is a nonpositive integer");
  if (std::abs(z) > 50.0) throw DomainError("kummer_m: |z| > 50 is outside the series regime");
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= (a + double(n)) * z / ((b + double(n)) * double(n + 1));
    sum += term;
    if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) return sum;
  }
  throw ConvergenceError("kummer_m: series did not converge within 10000 terms");
}

Complex whittaker_w_series(const WhittakerIndex& idx, const RayArgument& z) {
  if (z.magnitude == 0.0) throw DomainError("whittaker_w: z = 0 is a branch point");
  return to_complex(reduced_series_wide(idx, z) * ray_power(z, WideReal(0.5) - idx.mu));
}

Complex whittaker_w_expansion(const WhittakerIndex& idx, const RayArgument& z) {
  if (z.magnitude < kAsymptoticThreshold) {
    throw DomainError("whittaker_w_expansion: magnitude below the large-argument threshold");
  }
  return to_complex(expansion_wide(idx, z));
}

Complex whittaker_w(const WhittakerIndex& idx, const RayArgument& z) {
  if (z.magnitude == 0.0) throw DomainError("whittaker_w: z = 0 is a branch point");
  if (z.magnitude > kSeriesCrossover) return whittaker_w_expansion(idx, z);
  return whittaker_w_series(idx, z);
}

Complex whittaker_asymptotic(const WhittakerIndex& idx, const RayArgument& z) {
  if (z.magnitude < kAsymptoticThreshold) {
    throw DomainError("whittaker_asymptotic: magnitude below the large-argument threshold");
  }
  const double x = z.magnitude;
  if (z.ray == Ray::positive) return std::exp(-x / 2) * std::pow(x, idx.kappa);
  return std::exp(x / 2) * std::pow(x, idx.kappa) * std::polar(1.0, kPi * idx.kappa);
}

WideComplex whittaker_w_reduced_wide(const WhittakerIndex& idx, const RayArgument& z) {
  if (z.magnitude <= kSeriesCrossover) return reduced_series_wide(idx, z);
  return expansion_wide(idx, z) / ray_power(z, WideReal(0.5) - idx.mu);
}

double erfi_paper(double x) {
  if (!(std::abs(x) <= 20.0)) throw OverflowError("erfi_paper: |x| > 20 overflows double range");
  return erfi_series<double>(x, 1e-17);
}

WideReal erfi_paper_wide(const WideReal& x) {
  static const WideReal kCutoff("1e-48");
  return erfi_series<WideReal>(x, kCutoff);
}

double hermite_poly(int n, double x) {
  if (n < 0 || n > 50) throw DomainError("hermite_poly: degree must be in [0, 50]");
  double prev = 1.0;
  if (n == 0) return prev;
  double curr = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace ptdilate::specfun
