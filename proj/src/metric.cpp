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

#include "ptdilate/metric.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "ptdilate/errors.hpp"

namespace ptdilate::metric {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Quantities shared by the double and extended-precision routes.
struct RawMetric {
  Matrix2c eta;
  double l;
  double delta;
  double lambda_plus;
  double lambda_minus;
};

RawMetric raw_metric_double(const solutions::BasisPair& y, const DilationParams& d) {
  const StateVec2& y0 = y.first;
  const StateVec2& y1 = y.second;
  const double n0 = y0.squaredNorm();
  const double n1 = y1.squaredNorm();
  const double overlap = std::norm(y0.dot(y1));
  RawMetric r;
  r.eta = d.d0_sq * y0 * y0.adjoint() + d.d1_sq * y1 * y1.adjoint();
  r.l = d.d0_sq * n0 + d.d1_sq * n1;
  r.delta = n0 * n1 - overlap;
  const double product = d.d0_sq * d.d1_sq * r.delta;
  r.lambda_plus = r.l / 2 + std::sqrt(std::max(0.0, r.l * r.l / 4 - product));
  // lambda_minus = product / lambda_plus avoids the cancellation in l/2 - sqrt(...).
  r.lambda_minus = r.lambda_plus > 0 ? product / r.lambda_plus : 0.0;
  return r;
}

WideReal abs2(const WideComplex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

RawMetric raw_metric_wide(const solutions::WideBasisPair& y, const DilationParams& d) {
  const WideReal d0 = d.d0_sq;
  const WideReal d1 = d.d1_sq;
  const WideVec2& y0 = y.first;
  const WideVec2& y1 = y.second;
  const WideReal n0 = abs2(y0.up) + abs2(y0.down);
  const WideReal n1 = abs2(y1.up) + abs2(y1.down);
  const WideComplex overlap = conj(y0.up) * y1.up + conj(y0.down) * y1.down;
  const WideReal eta11 = d0 * abs2(y0.up) + d1 * abs2(y1.up);
  const WideReal eta22 = d0 * abs2(y0.down) + d1 * abs2(y1.down);
  const WideComplex eta21 =
      WideComplex(d0) * y0.down * conj(y0.up) + WideComplex(d1) * y1.down * conj(y1.up);
  const WideReal l = d0 * n0 + d1 * n1;
  const WideReal delta = n0 * n1 - abs2(overlap);
  const WideReal product = d0 * d1 * delta;
  WideReal disc = l * l / 4 - product;
  if (disc < 0) disc = 0;
  const WideReal lambda_plus = l / 2 + sqrt(disc);
  const WideReal lambda_minus = lambda_plus > 0 ? product / lambda_plus : WideReal(0);

  RawMetric r;
  const Complex off = to_complex(eta21);
  r.eta << static_cast<double>(eta11), std::conj(off), off, static_cast<double>(eta22);
  r.l = static_cast<double>(l);
  r.delta = static_cast<double>(delta);
  r.lambda_plus = static_cast<double>(lambda_plus);
  r.lambda_minus = static_cast<double>(lambda_minus);
  return r;
}

// Grid maximum with golden-section refinement around the best grid point.
double maximize(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return f(a);
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / kScanStep - 1e-9)));
  const double h = (b - a) / n;
  int best = 0;
  double best_value = kNegInf;
  for (int k = 0; k <= n; ++k) {
    const double v = f(a + k * h);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double lo = a + std::max(0, best - 1) * h;
  double hi = a + std::min(n, best + 1) * h;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double e = lo + ratio * (hi - lo);
  double fc = f(c);
  double fe = f(e);
  while (hi - lo > 1e-10) {
    if (fc > fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + ratio * (hi - lo);
      fe = f(e);
    }
  }
  return std::max({best_value, fc, fe});
}

}  // namespace

DilationParams::DilationParams(double d0, double d1) : d0_sq(d0), d1_sq(d1) {
  if (!std::isfinite(d0_sq) || !std::isfinite(d1_sq) || d0_sq < 0.0 || d1_sq < 0.0) {
    throw ValidationError("|D0|^2 and |D1|^2 must be finite and nonnegative");
  }
}

MetricState metric(const SolutionBasis& basis, const DilationParams& d, double t) {
  basis.check_time(t);
  const HamiltonianParams& p = basis.params();
  const RawMetric r = p.omega * t * t > kWidePrecisionArgument
                          ? raw_metric_wide(basis.y_wide(t), d)
                          : raw_metric_double(basis.y(t), d);
  if (!r.eta.allFinite() || !std::isfinite(r.l)) {
    throw OverflowError("metric overflows double range at t = " + std::to_string(t));
  }
  const Matrix2c h = model::hamiltonian(p, t);
  MetricState ms;
  ms.t = t;
  ms.eta = r.eta;
  ms.eta_dot = Complex(0.0, -1.0) * (h.adjoint() * r.eta - r.eta * h);
  ms.lambda_plus = r.lambda_plus;
  ms.lambda_minus = r.lambda_minus;
  ms.l = r.l;
  ms.delta = r.delta;
  ms.x = r.eta(1, 0).real();
  ms.y = r.eta(1, 0).imag();
  ms.w = (r.eta(0, 0).real() + r.eta(1, 1).real()) / 2 - 1.0;
  ms.z = (r.eta(0, 0).real() - r.eta(1, 1).real()) / 2;
  return ms;
}

MetricState metric(const HamiltonianParams& p, const DilationParams& d, double t) {
  return metric(SolutionBasis(p), d, t);
}

std::vector<MetricState> metric_scan(const SolutionBasis& basis, const DilationParams& d,
                                     std::span<const double> times, unsigned workers) {
  std::vector<MetricState> out(times.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, times.size() / 64 + 1));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < times.size(); i += workers) out[i] = metric(basis, d, times[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double eta_evolution_residual(const SolutionBasis& basis, const DilationParams& d, double t) {
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const MetricState here = metric(basis, d, t);
  Matrix2c derivative;
  if (t - h >= basis.t_min()) {
    derivative = (metric(basis, d, t + h).eta - metric(basis, d, t - h).eta) / (2.0 * h);
  } else {
    derivative = (-3.0 * here.eta + 4.0 * metric(basis, d, t + h).eta -
                  metric(basis, d, t + 2.0 * h).eta) / (2.0 * h);
  }
  const Matrix2c hm = model::hamiltonian(basis.params(), t);
  const Matrix2c residual =
      Complex(0.0, 1.0) * derivative - hm.adjoint() * here.eta + here.eta * hm;
  return max_abs(residual) / max_abs(here.eta);
}

bool validity(const MetricState& ms) { return ms.lambda_minus >= 1.0 - kValidityTolerance; }

double equal_d_bound(const SolutionBasis& basis, TimeInterval interval) {
  return maximize(
      [&](double t) {
        const solutions::BasisPair y = basis.y(t);
        const double n0 = y.first.squaredNorm();
        const double n1 = y.second.squaredNorm();
        const double delta = n0 * n1 - std::norm(y.first.dot(y.second));
        const double l = n0 + n1;
        return (l + std::sqrt(std::max(0.0, l * l - 4.0 * delta))) / (2.0 * delta);
      },
      interval.begin, interval.end);
}

ApproxBounds approx_bounds_interval(const SolutionBasis& basis, TimeInterval interval) {
  ApproxBounds out;
  out.d0_min = maximize([&](double t) { return 2.0 / basis.y(t).first.squaredNorm(); },
                        interval.begin, interval.end);
  out.d1_min = maximize([&](double t) { return basis.y(t).first.squaredNorm(); },
                        interval.begin, interval.end);
  const solutions::BasisPair end = basis.y(interval.end);
  out.y1_small = end.second.norm() <= 0.1 * end.first.norm();
  return out;
}

double refined_d1_bound(const SolutionBasis& basis, double d0_sq, double t0) {
  const double n1_end = basis.y(t0).second.squaredNorm();
  if (!(d0_sq > n1_end)) {
    throw DegenerateError("refined bound needs |D0|^2 > |y1(t0)|^2 = " + std::to_string(n1_end));
  }
  return maximize(
      [&](double t) {
        const solutions::BasisPair y = basis.y(t);
        const double denominator = d0_sq - y.second.squaredNorm();
        if (denominator <= 0.0) return kNegInf;
        return (d0_sq * y.first.squaredNorm() - 1.0) / denominator;
      },
      std::max(0.0, basis.t_min()), t0);
}

std::optional<double> breakdown_time(const SolutionBasis& basis, const DilationParams& d,
                                     double t_max, double t_start) {
  if (t_max > basis.t_max()) {
    throw OverflowError("t_max " + std::to_string(t_max) + " is beyond the numeric horizon " +
                        std::to_string(basis.t_max()));
  }
  if (!validity(metric(basis, d, t_start))) {
    throw InvalidMetricError("dilation is invalid at the start time " + std::to_string(t_start));
  }
  auto excess = [&](double t) { return metric(basis, d, t).lambda_minus - 1.0; };
  double prev = t_start;
  for (int k = 1;; ++k) {
    const double t = std::min(t_max, t_start + k * kScanStep);
    if (excess(t) < 0.0) {
      double lo = prev;
      double hi = t;
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    if (t >= t_max) return std::nullopt;
    prev = t;
  }
}

EigenvalueAsymptotics metric_asymptotics(const HamiltonianParams& p, const DilationParams& d,
                                         double t) {
  const double z = p.omega * t * t;
  if (z < 10.0) throw DomainError("metric_asymptotics needs w t^2 >= 10");
  const double power = std::pow(z, 1.0 / (2.0 * p.omega));
  return {std::sqrt(p.omega) / power * d.d0_sq * std::exp(z),
          d.d1_sq * 4.0 * std::pow(p.omega, 1.5) * power * std::exp(-z)};
}

GaugeSplit gauge_decompose(const SolutionBasis& basis, const DilationParams& d, double t) {
  const MetricState ms = metric(basis, d, t);
  const Matrix2c h = model::hamiltonian(basis.params(), t);
  GaugeSplit out;
  out.gauge = Complex(0.0, -0.5) * ms.eta.inverse() * ms.eta_dot;
  out.h_pt = h - out.gauge;
  out.pseudo_hermiticity_residual = max_abs(out.h_pt.adjoint() * ms.eta - ms.eta * out.h_pt) /
                                    (max_abs(ms.eta) * max_abs(out.h_pt));
  return out;
}

}  // namespace ptdilate::metric
