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

#include "ptdilate/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "ptdilate/errors.hpp"

namespace ptdilate::evolve {
namespace {

namespace odeint = boost::numeric::odeint;
using OdeState = std::vector<Complex>;

constexpr Complex kMinusI(0.0, -1.0);

std::vector<double> output_times(TimeSpan span, const EvolutionConfig& cfg) {
  if (cfg.output_grid.empty()) return {span.begin, span.end};
  // Grid points within rounding of the span ends are snapped onto them.
  const double slack = 1e-12 * std::max({1.0, std::abs(span.begin), std::abs(span.end)});
  std::vector<double> grid = cfg.output_grid;
  for (double& t : grid) {
    if (t < span.begin - slack || t > span.end + slack) {
      throw ValidationError("output time " + std::to_string(t) + " lies outside the span");
    }
    t = std::clamp(t, span.begin, span.end);
  }
  return grid;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0)) {
    throw ValidationError("tolerances and max_step must be positive");
  }
  for (std::size_t i = 1; i < output_grid.size(); ++i) {
    if (!(output_grid[i] > output_grid[i - 1])) {
      throw ValidationError("output grid must be strictly increasing");
    }
  }
}

Trajectory integrate_linear(const Generator& generator, const Eigen::VectorXcd& psi0,
                            TimeSpan span, const EvolutionConfig& cfg) {
  cfg.validate();
  if (!(span.end > span.begin)) throw ValidationError("integration span must be nonempty");
  const std::vector<double> grid = output_times(span, cfg);
  const Eigen::Index dim = psi0.size();

  std::vector<double> stops;
  stops.reserve(grid.size() + 1);
  if (grid.front() > span.begin) stops.push_back(span.begin);
  stops.insert(stops.end(), grid.begin(), grid.end());

  auto rhs = [&](const OdeState& x, OdeState& dxdt, double t) {
    const Eigen::MatrixXcd m = generator(t);
    if (!m.allFinite()) {
      throw DomainError("generator is not finite at t = " + std::to_string(t));
    }
    const Eigen::Map<const Eigen::VectorXcd> v(x.data(), dim);
    Eigen::Map<Eigen::VectorXcd> out(dxdt.data(), dim);
    out = kMinusI * (m * v);
  };

  Trajectory traj;
  auto observe = [&](const OdeState& x, double t) {
    if (traj.times.size() == grid.size() || t < grid[traj.times.size()]) return;
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(x.data(), dim);
    traj.times.push_back(t);
    traj.states.push_back(v);
    SampleDiagnostics diag;
    diag.norm = v.norm();
    traj.diagnostics.push_back(diag);
  };

  OdeState state(psi0.data(), psi0.data() + dim);
  auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, cfg.max_step,
                                           odeint::runge_kutta_dopri5<OdeState>());
  try {
    odeint::integrate_times(stepper, rhs, state, stops.begin(), stops.end(),
                            std::min(cfg.max_step, 1e-3), observe);
  } catch (const odeint::step_adjustment_error& e) {
    throw ConvergenceError(std::string("step size underflow: ") + e.what());
  }
  return traj;
}

Trajectory simulate_dilated(const SolutionBasis& basis, const DilationParams& d,
                            const StateVec2& psi0, TimeSpan span, const EvolutionConfig& cfg,
                            H4Mode mode) {
  if (psi0.norm() == 0.0) throw ValidationError("initial state must be nonzero");
  try {
    if (const auto tb = metric::breakdown_time(basis, d, span.end, span.begin)) {
      throw BreakdownError("dilation breaks down at t = " + std::to_string(*tb) +
                               " inside the span",
                           *tb);
    }
  } catch (const InvalidMetricError&) {
    throw BreakdownError("dilation is invalid at the span start t = " +
                             std::to_string(span.begin),
                         span.begin);
  }

  const dilation::TauDecomp tau0 = dilation::tau_from_metric(metric::metric(basis, d, span.begin));
  Eigen::VectorXcd big0(4);
  big0 << psi0, tau0.tau * psi0;

  const Generator generator = [&](double t) -> Eigen::MatrixXcd {
    return dilation::assemble_dilated(basis, d, t, mode).hh;
  };
  Trajectory traj = integrate_linear(generator, big0, span, cfg);

  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const Eigen::VectorXcd& big = traj.states[i];
    const StateVec2 upper = big.head<2>();
    const StateVec2 lower = big.tail<2>();
    const StateVec2 reference = solutions::propagate_analytic(basis, psi0, span.begin, t);
    const metric::MetricState ms = metric::metric(basis, d, t);
    SampleDiagnostics& diag = traj.diagnostics[i];
    diag.valid = metric::validity(ms);
    diag.upper_deviation = (upper - reference).norm() / reference.norm();
    diag.fidelity =
        std::norm(reference.dot(upper)) / (reference.squaredNorm() * upper.squaredNorm());
    if (diag.valid) {
      const Matrix2c tau = dilation::tau_from_metric(ms).tau;
      diag.lower_consistency = (lower - tau * upper).norm() / big.norm();
    }
  }
  return traj;
}

double dilation_efficiency(const SolutionBasis& basis, const DilationParams& d,
                           const StateVec2& psi, double t) {
  const metric::MetricState ms = metric::metric(basis, d, t);
  return psi.squaredNorm() / psi.dot(ms.eta * psi).real();
}

}  // namespace ptdilate::evolve
