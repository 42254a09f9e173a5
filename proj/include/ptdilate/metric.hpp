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

#include <optional>
#include <span>
#include <vector>

#include "ptdilate/model.hpp"
#include "ptdilate/solutions.hpp"
#include "ptdilate/types.hpp"

/// The metric operator eta = |D0|^2 |y0><y0| + |D1|^2 |y1><y1| built from
/// the dual solutions, its eigenvalues, the dilation-validity test and the
/// tools for choosing |D0|^2, |D1|^2.
namespace ptdilate::metric {

using model::HamiltonianParams;
using solutions::SolutionBasis;

/// Only the moduli |D0|^2, |D1|^2 enter eta.
struct DilationParams {
  /// Throws ValidationError for negative or non-finite values.
  DilationParams(double d0_sq, double d1_sq);

  double d0_sq;
  double d1_sq;
};

struct MetricState {
  double t;
  Matrix2c eta;
  Matrix2c eta_dot;
  double lambda_plus;
  double lambda_minus;
  double l;      // |D0|^2 |y0|^2 + |D1|^2 |y1|^2
  double delta;  // |y0|^2 |y1|^2 - |<y0|y1>|^2
  // eta - 1 = [[w + z, x - i y], [x + i y, w - z]]
  double x;
  double y;
  double z;
  double w;
};

/// Metric quantities are accumulated in extended precision above this w t^2.
inline constexpr double kWidePrecisionArgument = 12.0;
inline constexpr double kValidityTolerance = 1e-12;
inline constexpr double kScanStep = 1e-3;

/// eta_dot is the analytic -i (H^dagger eta - eta H).
MetricState metric(const SolutionBasis& basis, const DilationParams& d, double t);
MetricState metric(const HamiltonianParams& p, const DilationParams& d, double t);

/// Evaluates metric() at each time on up to `workers` threads (0: hardware
/// concurrency). Results are in input order.
std::vector<MetricState> metric_scan(const SolutionBasis& basis, const DilationParams& d,
                                     std::span<const double> times, unsigned workers = 0);

/// max |i eta'(t) - H^dagger eta + eta H| / max |eta| with eta' from central
/// differences of metric().
double eta_evolution_residual(const SolutionBasis& basis, const DilationParams& d, double t);

/// lambda_minus >= 1 - kValidityTolerance.
bool validity(const MetricState& ms);

struct TimeInterval {
  double begin;
  double end;
};

/// Smallest common |D|^2 = |D0|^2 = |D1|^2 keeping the dilation valid on the
/// interval: max of (l + sqrt(l^2 - 4 delta)) / (2 delta), l = |y0|^2 + |y1|^2.
double equal_d_bound(const SolutionBasis& basis, TimeInterval interval);

struct ApproxBounds {
  double d0_min;  // max 2 / |y0|^2
  double d1_min;  // max |y0|^2
  // |y1| <= 0.1 |y0| at the interval end, where the approximation holds.
  bool y1_small;
};

ApproxBounds approx_bounds_interval(const SolutionBasis& basis, TimeInterval interval);

/// max over [0, t0] of (|D0|^2 |y0|^2 - 1) / (|D0|^2 - |y1|^2), taken over
/// the points with a positive denominator. Throws DegenerateError when
/// d0_sq <= |y1(t0)|^2.
double refined_d1_bound(const SolutionBasis& basis, double d0_sq, double t0);

/// First t in (t_start, t_max] with lambda_minus(t) = 1, to 1e-9. Throws
/// InvalidMetricError if the dilation is already invalid at t_start.
std::optional<double> breakdown_time(const SolutionBasis& basis, const DilationParams& d,
                                     double t_max, double t_start = 0.0);

struct EigenvalueAsymptotics {
  double lambda_plus;
  double lambda_minus;
};

/// Large-time eigenvalue forms for the Whittaker normalization; w t^2 >= 10.
EigenvalueAsymptotics metric_asymptotics(const HamiltonianParams& p, const DilationParams& d,
                                         double t);

struct GaugeSplit {
  Matrix2c h_pt;
  Matrix2c gauge;
  // max |h_pt^dagger eta - eta h_pt| / (max |eta| * max |h_pt|)
  double pseudo_hermiticity_residual;
};

/// H = h_pt + gauge with gauge = -(i/2) eta^{-1} eta_dot.
GaugeSplit gauge_decompose(const SolutionBasis& basis, const DilationParams& d, double t);

}  // namespace ptdilate::metric
