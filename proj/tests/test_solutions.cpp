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
#include "ptdilate/solutions.hpp"
#include "ptdilate/specfun.hpp"

using namespace ptdilate;
using namespace ptdilate::solutions;

namespace {

const Complex I(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

SolutionBasis whittaker(double energy, double omega) {
  return SolutionBasis({energy, omega}, BasisRepresentation::whittaker_general);
}

// Coefficients (c0, c1) with v = c0 x0 + c1 x1 in the closed-form basis.
Eigen::Vector2cd closed_coefficients(double energy, double t, const StateVec2& v) {
  const BasisPair c = x_basis_closed_half(energy, t);
  Matrix2c m;
  m << c.first, c.second;
  return m.partialPivLu().solve(v);
}

}  // namespace

TEST_CASE("Whittaker basis examples") {
  const BasisPair x = x_basis_whittaker({1.0, 0.5}, 1.0);
  CHECK(std::abs(x.first(1) / x.first(0) - (-I)) < 1e-9);

  const BasisPair x0 = x_basis_whittaker({0.0, 0.5}, 2.0);
  CHECK(std::abs(x0.first(0) - std::pow(2.0, -0.25) * std::exp(-1.0)) < 1e-9);

  const HamiltonianParams p(1.0, 1.0);
  const auto first = [&](double t) { return x_basis_whittaker(p, t).first; };
  const auto second = [&](double t) { return x_basis_whittaker(p, t).second; };
  CHECK(ode_residual(p, first, 0.5, Equation::primal) < 1e-8);
  CHECK(ode_residual(p, second, 0.5, Equation::primal) < 1e-8);
}

TEST_CASE("canonical dual basis examples") {
  const HamiltonianParams p(1.0, 0.5);
  const BasisPair y0 = y_basis(p, 0.0);
  CHECK(max_abs(y0.first - StateVec2(1.0, 0.0)) < 1e-15);
  CHECK(max_abs(y0.second - StateVec2(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(y_basis(p, 2.1).first.squaredNorm() - 4.129) <= 0.005 * 4.129);
  CHECK(std::abs(y_basis(p, 4.0).first.squaredNorm() - 237.80) <= 0.001 * 237.80);
}

TEST_CASE("closed form examples") {
  const BasisPair x = x_basis_closed_half(1.0, 0.0);
  CHECK(max_abs(x.first - StateVec2(1.0, 0.0)) == 0.0);
  CHECK(max_abs(x.second - StateVec2(0.0, 1.0)) < 1e-15);

  const HamiltonianParams p(1.0, 0.5);
  const auto second = [](double t) { return x_basis_closed_half(1.0, t).second; };
  CHECK(ode_residual(p, second, 2.0, Equation::primal) < 1e-8);

  const BasisPair x1 = x_basis_closed_half(0.0, 1.0);
  CHECK(max_abs(x1.first - std::exp(-0.25) * StateVec2(1.0, -I)) < 1e-15);

  CHECK_THROWS_AS(x_basis_closed_half(1.0, 6.5), OverflowError);
}

TEST_CASE("closed form lower component survives cancellation") {
  // delta(t) e^{-t^2/4} from the defining difference in 50-digit arithmetic.
  for (double t : {2.0, 3.5, 5.0, 5.9}) {
    const WideReal wt(t);
    const WideReal delta =
        exp(wt * wt / 2) - sqrt(WideReal(2)) * wt * specfun::erfi_paper_wide(wt / sqrt(WideReal(2)));
    const double expected = static_cast<double>(delta * exp(-wt * wt / 4));
    const Complex got = x_basis_closed_half(0.0, t).second(1);
    CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
  }
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(SolutionBasis({1.0, 1.0}, BasisRepresentation::closed_form_half), ValidationError);
  CHECK(SolutionBasis({1.0, 0.5}).representation() == BasisRepresentation::closed_form_half);
  CHECK(SolutionBasis({1.0, 0.7}).representation() == BasisRepresentation::whittaker_general);
  CHECK_THROWS_AS(whittaker(1.0, 1.0).x(-0.1), DomainError);
  CHECK_THROWS_AS(SolutionBasis({1.0, 0.5}).x(7.0), OverflowError);
  CHECK_NOTHROW(SolutionBasis({1.0, 0.5}).x(-1.0));
}

TEST_CASE("duals are the swapped primal solutions") {
  oracle::Sampler rng(2);
  for (double omega : {0.5, 0.8}) {
    const SolutionBasis b({1.0, omega});
    for (int i = 0; i < 10; ++i) {
      const double t = rng.uniform(0.0, 4.0);
      const BasisPair x = b.x(t);
      const BasisPair y = b.y(t);
      CHECK(max_abs(y.first - model::sigma_x() * x.second) == 0.0);
      CHECK(max_abs(y.second - model::sigma_x() * x.first) == 0.0);
    }
  }
}

TEST_CASE("Wronskian examples") {
  const SolutionBasis closed({1.0, 0.5});
  for (double t : {0.0, 0.7, 2.0, 3.3, 5.5}) CHECK(std::abs(wronskian(closed, t) - 1.0) < 1e-10);

  const auto constant_over = [](const SolutionBasis& b, std::initializer_list<double> times) {
    const Complex w0 = wronskian(b, *times.begin());
    double worst = 0.0;
    for (double t : times) worst = std::max(worst, rel(wronskian(b, t), w0));
    return worst;
  };
  CHECK(constant_over(whittaker(1.0, 0.5), {0.5, 1.0, 2.0, 3.0}) < 1e-8);
  CHECK(constant_over(whittaker(1.0, 1.0), {0.5, 1.0, 1.5}) < 1e-8);
  CHECK(constant_over(whittaker(0.3, 0.25), {0.2, 1.0, 3.0, 6.0, 9.0}) < 1e-8);
}

TEST_CASE("ode_residual examples") {
  const HamiltonianParams p(1.0, 0.5);
  const auto x0 = [](double t) { return x_basis_closed_half(1.0, t).first; };
  const auto y0 = [&](double t) { return y_basis(p, t).first; };
  CHECK(ode_residual(p, x0, 1.3, Equation::primal) < 1e-8);
  CHECK(ode_residual(p, y0, 2.0, Equation::dual) < 1e-8);
  const auto constant = [](double) { return StateVec2(1.0, 0.0); };
  CHECK(std::abs(ode_residual(p, constant, 1.0, Equation::primal) - std::abs(1.0 + 0.5 * I)) < 1e-8);
  CHECK(ode_residual(p, x0, 1.3, Equation::dual) > 1e-2);
}

TEST_CASE("sigma_x maps primal solutions to dual solutions") {
  oracle::Sampler rng(23);
  for (double omega : {0.25, 0.5, 1.0}) {
    const SolutionBasis b({1.0, omega});
    const HamiltonianParams& p = b.params();
    for (int i = 0; i < 20; ++i) {
      const double t = rng.uniform(0.1, 4.0);
      const auto d0 = [&](double s) { return StateVec2(model::sigma_x() * b.x(s).first); };
      const auto d1 = [&](double s) { return StateVec2(model::sigma_x() * b.x(s).second); };
      const double scale0 = b.x(t).first.norm();
      const double scale1 = b.x(t).second.norm();
      CHECK(ode_residual(p, d0, t, Equation::dual) < 1e-7 * std::max(1.0, scale0));
      CHECK(ode_residual(p, d1, t, Equation::dual) < 1e-7 * std::max(1.0, scale1));
    }
  }
}

TEST_CASE("Whittaker and closed-form bases are related by constants") {
  const double c0 = std::pow(2.0, -0.25);
  const Eigen::Vector2cd ref = closed_coefficients(1.0, 1.0, x_basis_whittaker({1.0, 0.5}, 1.0).second);
  for (double t = 0.2; t <= 4.0; t += 0.19) {
    const BasisPair w = x_basis_whittaker({1.0, 0.5}, t);
    const BasisPair c = x_basis_closed_half(1.0, t);
    for (int k = 0; k < 2; ++k) CHECK(rel(w.first(k), c0 * c.first(k)) < 1e-8);
    const Eigen::Vector2cd coef = closed_coefficients(1.0, t, w.second);
    CHECK((coef - ref).norm() < 1e-8 * ref.norm());
  }
  // The x1 coefficient is 2^{-1/4}(1+i); x1 also picks up an x0 admixture.
  CHECK(std::abs(ref(1) - c0 * Complex(1.0, 1.0)) < 1e-8);
}

TEST_CASE("basis components are smooth across the exceptional point") {
  for (const SolutionBasis& b : {SolutionBasis({1.0, 0.5}), whittaker(1.0, 0.5)}) {
    const auto component = [&](int which, int k, double t) {
      const BasisPair x = b.x(t);
      return which == 0 ? x.first(k) : x.second(k);
    };
    for (int which = 0; which < 2; ++which) {
      for (int k = 0; k < 2; ++k) {
        const auto second_diff = [&](double h) {
          return (component(which, k, 2.0 + h) - 2.0 * component(which, k, 2.0) +
                  component(which, k, 2.0 - h)) /
                 (h * h);
        };
        const Complex coarse = second_diff(1e-2);
        const Complex fine = second_diff(1e-3);
        CHECK(std::isfinite(std::abs(fine)));
        CHECK(std::abs(coarse - fine) <= 0.01 * std::max(std::abs(fine), 1e-3));
      }
    }
  }
}

TEST_CASE("large-time shape of x0") {
  // e^{-iEt - omega t^2/2} t^{2 kappa - 1/2} (1, -2 i omega t) up to a constant.
  const auto ratio = [](const SolutionBasis& b, double t, int k) {
    const double omega = b.params().omega;
    const double kappa = -0.25 + 0.25 / omega;
    const Complex up = std::exp(Complex(-omega * t * t / 2, -b.params().energy * t)) *
                       std::pow(t, 2 * kappa - 0.5);
    const Complex shape = k == 0 ? up : up * (-2.0 * I * omega * t);
    return b.x(t).first(k) / shape;
  };
  for (const SolutionBasis& b : {SolutionBasis({1.0, 0.5}), whittaker(1.0, 0.5), whittaker(1.0, 1.0)}) {
    for (int k = 0; k < 2; ++k) CHECK(rel(ratio(b, 5.0, k), ratio(b, 6.0, k)) < 0.05);
  }
}

TEST_CASE("analytic propagator composes") {
  oracle::Sampler rng(31);
  for (const SolutionBasis& b : {SolutionBasis({1.0, 0.5}), whittaker(0.4, 0.8)}) {
    const StateVec2 psi(rng.complex_unit(), rng.complex_unit());
    const StateVec2 mid = propagate_analytic(b, psi, 0.3, 1.4);
    const StateVec2 direct = propagate_analytic(b, psi, 0.3, 2.6);
    CHECK((propagate_analytic(b, mid, 1.4, 2.6) - direct).norm() < 1e-10 * direct.norm());
    CHECK((propagate_analytic(b, psi, 0.9, 0.9) - psi).norm() < 1e-13);
    const auto path = [&](double t) { return propagate_analytic(b, psi, 0.3, t); };
    CHECK(ode_residual(b.params(), path, 1.7, Equation::primal) < 1e-7 * std::max(1.0, path(1.7).norm()));
  }
}
