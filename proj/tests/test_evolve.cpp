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


#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "ptdilate/errors.hpp"
#include "ptdilate/evolve.hpp"

using namespace ptdilate;
using namespace ptdilate::evolve;

namespace {

const Complex I(0.0, 1.0);

const SolutionBasis& half() {
  static const SolutionBasis b({1.0, 0.5});
  return b;
}

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g;
  for (int k = 0; k <= n; ++k) g.push_back(a + (b - a) * k / n);
  return g;
}

EvolutionConfig config_on(std::vector<double> g) {
  EvolutionConfig cfg;
  cfg.output_grid = std::move(g);
  return cfg;
}

Eigen::VectorXcd vec2(Complex a, Complex b) {
  Eigen::VectorXcd v(2);
  v << a, b;
  return v;
}

double max_upper_deviation(const Trajectory& tr) {
  double worst = 0.0;
  for (const SampleDiagnostics& d : tr.diagnostics) worst = std::max(worst, d.upper_deviation);
  return worst;
}

}  // namespace

TEST_CASE("constant generator") {
  const Generator gen = [](double) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    return m;
  };
  const Trajectory tr = integrate_linear(gen, vec2(1.0, 0.0), {0.0, std::numbers::pi}, EvolutionConfig{});
  REQUIRE(tr.times.size() == 2);
  CHECK(std::abs(tr.states.back()(0) - Complex(-1.0, 0.0)) < 1e-9);
  CHECK(std::abs(tr.states.back()(1)) < 1e-15);
}

TEST_CASE("primal and dual generators reproduce the closed form") {
  const model::HamiltonianParams p(1.0, 0.5);
  const std::vector<double> g = grid(0.0, 3.0, 60);
  const Trajectory primal = integrate_linear(
      [&](double t) -> Eigen::MatrixXcd { return model::hamiltonian(p, t); }, vec2(1.0, 0.0), {0.0, 3.0},
      config_on(g));
  const Trajectory dual = integrate_linear(
      [&](double t) -> Eigen::MatrixXcd { return model::hamiltonian(p, t).adjoint(); }, vec2(1.0, 0.0),
      {0.0, 3.0}, config_on(g));
  REQUIRE(primal.times.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(primal.times[i] == g[i]);
    const StateVec2 x0 = solutions::x_basis_closed_half(1.0, g[i]).first;
    const StateVec2 y0 = half().y(g[i]).first;
    CHECK((StateVec2(primal.states[i]) - x0).norm() < 1e-8);
    CHECK((StateVec2(dual.states[i]) - y0).norm() < 1e-8);
  }
}

TEST_CASE("integrator input validation") {
  const Generator gen = [](double) -> Eigen::MatrixXcd { return Eigen::MatrixXcd::Identity(2, 2); };
  EvolutionConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate_linear(gen, vec2(1.0, 0.0), {0.0, 1.0}, bad), ValidationError);
  CHECK_THROWS_AS(integrate_linear(gen, vec2(1.0, 0.0), {0.0, 1.0}, config_on({0.0, 0.5, 0.5})),
                  ValidationError);
  CHECK_THROWS_AS(integrate_linear(gen, vec2(1.0, 0.0), {0.0, 1.0}, config_on({0.0, 2.0})), ValidationError);
  const Generator nan_gen = [](double t) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    if (t > 0.5) m(0, 0) = NAN;
    return m;
  };
  CHECK_THROWS_AS(integrate_linear(nan_gen, vec2(1.0, 0.0), {0.0, 1.0}, EvolutionConfig{}), DomainError);
}

TEST_CASE("dilated simulation reproduces the two-level evolution") {
  const Trajectory tr = simulate_dilated(half(), {3.5, 238.0}, StateVec2(1.0, 0.0), {0.0, 3.9},
                                         config_on(grid(0.0, 3.9, 78)), H4Mode::hermitian_part);
  const double norm0 = tr.diagnostics.front().norm;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const SampleDiagnostics& d = tr.diagnostics[i];
    CHECK(std::abs(d.norm - norm0) <= 1e-8 * norm0);
    CHECK(d.upper_deviation < 1e-6);
    CHECK(d.lower_consistency < 1e-6);
    CHECK(d.valid);
    CHECK(std::abs(tr.states[i].norm() - d.norm) <= 1e-12 * d.norm);
  }
  CHECK(tr.diagnostics.front().lower_consistency < 1e-14);
}

TEST_CASE("simulation errors") {
  CHECK_THROWS_AS(simulate_dilated(half(), {3.5, 238.0}, StateVec2::Zero(), {0.0, 1.0}, EvolutionConfig{},
                                   H4Mode::hermitian_part),
                  ValidationError);
  try {
    simulate_dilated(half(), {3.5, 238.0}, StateVec2(1.0, 0.0), {0.0, 4.2}, EvolutionConfig{},
                     H4Mode::hermitian_part);
    FAIL("expected a breakdown");
  } catch (const BreakdownError& e) {
    CHECK(std::abs(e.time() - 4.0001) < 0.002);
  }
  CHECK_THROWS_AS(simulate_dilated(half(), {0.5, 238.0}, StateVec2(1.0, 0.0), {0.0, 1.0}, EvolutionConfig{},
                                   H4Mode::hermitian_part),
                  BreakdownError);
}

TEST_CASE("random initial states and both h4 modes") {
  oracle::Sampler rng(101);
  const std::vector<double> g = grid(0.0, 3.9, 39);
  for (int i = 0; i < 4; ++i) {
    StateVec2 psi0(rng.complex_unit(), rng.complex_unit());
    psi0.normalize();
    const Trajectory a =
        simulate_dilated(half(), {3.5, 238.0}, psi0, {0.0, 3.9}, config_on(g), H4Mode::hermitian_part);
    const Trajectory b = simulate_dilated(half(), {3.5, 238.0}, psi0, {0.0, 3.9}, config_on(g), H4Mode::wu_choice);
    CHECK(max_upper_deviation(a) < 1e-6);
    CHECK(max_upper_deviation(b) < 1e-6);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Eigen::VectorXcd ua = a.states[k].head(2);
      const Eigen::VectorXcd ub = b.states[k].head(2);
      CHECK((ua - ub).norm() <= 1e-6 * ua.norm());
    }
  }
}

TEST_CASE("Whittaker basis simulation") {
  const SolutionBasis b(model::HamiltonianParams(0.3, 1.0));
  const Trajectory tr = simulate_dilated(b, {4.0, 9.0}, StateVec2(0.6, Complex(0.0, 0.8)), {0.0, 1.0},
                                         config_on(grid(0.0, 1.0, 20)), H4Mode::hermitian_part);
  CHECK(max_upper_deviation(tr) < 1e-6);
}

TEST_CASE("efficiency examples") {
  CHECK(dilation_efficiency(half(), {3.5, 238.0}, StateVec2(1.0, 0.0), 0.0) ==
        doctest::Approx(1.0 / 3.5).epsilon(1e-14));
  CHECK(dilation_efficiency(half(), {3.5, 238.0}, StateVec2(0.0, 1.0), 0.0) ==
        doctest::Approx(1.0 / 238.0).epsilon(1e-14));
  CHECK(dilation_efficiency(half(), {1.0, 1.0}, StateVec2(0.3, Complex(0.1, -2.0)), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-level norm varies while the metric norm is conserved") {
  const StateVec2 psi0(1.0, 0.0);
  const metric::DilationParams d(3.5, 238.0);
  const auto eta_norm = [&](double t) {
    const StateVec2 psi = solutions::propagate_analytic(half(), psi0, 0.0, t);
    return psi.dot(metric::metric(half(), d, t).eta * psi).real();
  };
  double lo = 1e300;
  double hi = 0.0;
  for (double t = 0.0; t <= 3.0; t += 0.05) {
    const double n = solutions::propagate_analytic(half(), psi0, 0.0, t).norm();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    CHECK(std::abs(eta_norm(t) - eta_norm(0.0)) <= 1e-6 * eta_norm(0.0));
  }
  CHECK(hi - lo > 1e-3);
}

TEST_CASE("tightening the tolerance does not move the result") {
  EvolutionConfig loose = config_on(grid(0.0, 3.0, 30));
  EvolutionConfig tight = loose;
  tight.rel_tol = loose.rel_tol / 2.0;
  tight.abs_tol = loose.abs_tol / 2.0;
  const StateVec2 psi0(0.8, Complex(0.0, 0.6));
  const Trajectory a = simulate_dilated(half(), {3.5, 238.0}, psi0, {0.0, 3.0}, loose, H4Mode::hermitian_part);
  const Trajectory b = simulate_dilated(half(), {3.5, 238.0}, psi0, {0.0, 3.0}, tight, H4Mode::hermitian_part);
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    CHECK((a.states[k] - b.states[k]).norm() <= 1e-6 * a.states[k].norm());
  }
}
