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

#include "ptdilate/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptdilate/errors.hpp"

namespace ptdilate::dilation {
namespace {

constexpr Complex kI(0.0, 1.0);

double relative(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

Matrix2c tau_matrix(double a, double b, double c, double d) {
  Matrix2c tau;
  tau << d + c, Complex(a, -b), Complex(a, b), d - c;
  return tau;
}

// det(eta - 1) = w^2 - x^2 - y^2 - z^2, in the cancellation-free product form.
double metric_determinant(const MetricState& ms) {
  return std::max(0.0, (ms.lambda_plus - 1.0) * (ms.lambda_minus - 1.0));
}

}  // namespace

TauDecomp tau_from_metric(const MetricState& ms) {
  if (ms.lambda_minus < 1.0 - metric::kValidityTolerance) {
    throw InvalidMetricError("eta - 1 is indefinite at t = " + std::to_string(ms.t) +
                             " (lambda_minus = " + std::to_string(ms.lambda_minus) + ")");
  }
  const double s = std::sqrt(metric_determinant(ms));
  const double d = std::sqrt(std::max(0.0, (ms.w + s) / 2.0));
  if (d == 0.0) return {0.0, 0.0, 0.0, 0.0, Matrix2c::Zero()};
  const double a = ms.x / (2.0 * d);
  const double b = ms.y / (2.0 * d);
  const double c = ms.z / (2.0 * d);
  return {a, b, c, d, tau_matrix(a, b, c, d)};
}

Matrix2c tau_derivative(const MetricState& ms) {
  if (ms.lambda_minus - 1.0 < 1e-9) {
    throw DegenerateError("tau derivative is singular at lambda_minus = 1 (t = " +
                          std::to_string(ms.t) + ")");
  }
  const TauDecomp tau = tau_from_metric(ms);
  const Matrix2c& e = ms.eta_dot;
  const double x_dot = e(1, 0).real();
  const double y_dot = e(1, 0).imag();
  const double w_dot = (e(0, 0).real() + e(1, 1).real()) / 2.0;
  const double z_dot = (e(0, 0).real() - e(1, 1).real()) / 2.0;

  const double s = std::sqrt(metric_determinant(ms));
  const double s_dot = (ms.w * w_dot - ms.x * x_dot - ms.y * y_dot - ms.z * z_dot) / s;
  const double d_dot = (w_dot + s_dot) / (4.0 * tau.d);
  const double a_dot = (x_dot - 2.0 * tau.a * d_dot) / (2.0 * tau.d);
  const double b_dot = (y_dot - 2.0 * tau.b * d_dot) / (2.0 * tau.d);
  const double c_dot = (z_dot - 2.0 * tau.c * d_dot) / (2.0 * tau.d);
  return tau_matrix(a_dot, b_dot, c_dot, d_dot);
}

Matrix2c tau_derivative(const SolutionBasis& basis, const DilationParams& d, double t) {
  return tau_derivative(metric::metric(basis, d, t));
}

std::string_view to_string(H4Mode mode) {
  return mode == H4Mode::hermitian_part ? "hermitian_part" : "wu_choice";
}

H4Mode parse_h4_mode(std::string_view name) {
  if (name == "hermitian_part") return H4Mode::hermitian_part;
  if (name == "wu_choice") return H4Mode::wu_choice;
  throw ValidationError("unknown h4 mode '" + std::string(name) +
                        "' (expected hermitian_part or wu_choice)");
}

H4Selection h4_select(H4Mode mode, const HamiltonianParams& p, const MetricState& ms,
                      const Matrix2c& tau, const Matrix2c& tau_dot) {
  const Matrix2c h = model::hamiltonian(p, ms.t);
  H4Selection out;
  if (mode == H4Mode::hermitian_part) {
    out.h4 = (h + h.adjoint()) / 2.0;
  } else {
    out.h4 = (h + (kI * tau_dot + tau * h) * tau) * ms.eta.inverse();
  }
  out.hermiticity_residual = relative(max_abs(out.h4 - out.h4.adjoint()), max_abs(out.h4));
  out.hermitian = out.hermiticity_residual <= 1e-8;
  return out;
}

H4Selection h4_select(H4Mode mode, const SolutionBasis& basis, const DilationParams& d,
                      double t) {
  const MetricState ms = metric::metric(basis, d, t);
  const TauDecomp tau = tau_from_metric(ms);
  return h4_select(mode, basis.params(), ms, tau.tau, tau_derivative(ms));
}

DilatedHamiltonian assemble_blocks(const Matrix2c& h, const Matrix2c& tau, const Matrix2c& tau_dot,
                                   const Matrix2c& h4, H4Mode mode) {
  const Matrix2c tau_adj = tau.adjoint();
  const Matrix2c tau_dot_adj = tau_dot.adjoint();
  const Matrix2c h_adj = h.adjoint();

  DilatedHamiltonian out;
  out.h4 = h4;
  out.h4_mode = mode;
  out.h2 = -kI * tau_dot_adj + h_adj * tau_adj - tau_adj * h4;
  out.h1 = h + kI * tau_dot_adj * tau - h_adj * tau_adj * tau + tau_adj * h4 * tau;
  out.hh << out.h1, out.h2, out.h2.adjoint(), out.h4;

  out.hermiticity_residual = relative(max_abs(out.hh - out.hh.adjoint()), max_abs(out.hh));
  const double tau_scale = max_abs(tau);
  out.upper_residual =
      relative(max_abs(out.h1 + out.h2 * tau - h),
               std::max({max_abs(out.h1), max_abs(out.h2) * tau_scale, max_abs(h)}));
  const Matrix2c lower_target = kI * tau_dot + tau * h;
  out.lower_residual =
      relative(max_abs(Matrix2c(out.h2.adjoint()) + h4 * tau - lower_target),
               std::max({max_abs(out.h2), max_abs(h4) * tau_scale, max_abs(lower_target)}));
  out.h4_hermiticity_residual = relative(max_abs(h4 - h4.adjoint()), max_abs(h4));
  return out;
}

DilatedHamiltonian assemble_dilated(const SolutionBasis& basis, const DilationParams& d, double t,
                                    H4Mode mode) {
  const MetricState ms = metric::metric(basis, d, t);
  const TauDecomp tau = tau_from_metric(ms);
  const Matrix2c tau_dot = tau_derivative(ms);
  const H4Selection h4 = h4_select(mode, basis.params(), ms, tau.tau, tau_dot);
  return assemble_blocks(model::hamiltonian(basis.params(), t), tau.tau, tau_dot, h4.h4, mode);
}

Matrix2c principal_sqrt(const Matrix2c& hermitian) {
  const Eigen::SelfAdjointEigenSolver<Matrix2c> eig(hermitian);
  const Eigen::Vector2d mu = eig.eigenvalues();
  Eigen::Vector2cd roots(std::sqrt(Complex(mu(0), 0.0)), std::sqrt(Complex(mu(1), 0.0)));
  const Matrix2c& v = eig.eigenvectors();
  return v * roots.asDiagonal() * v.adjoint();
}

Matrix2c solve_sylvester(const Matrix2c& tau, const Matrix2c& rhs) {
  // Column-major vec: vec(tau X + X tau) = (I (x) tau + tau^T (x) I) vec(X).
  Matrix4c k = Matrix4c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      k.block<2, 2>(2 * i, 2 * j) += tau(j, i) * Matrix2c::Identity();
    }
    k.block<2, 2>(2 * i, 2 * i) += tau;
  }
  const Eigen::Vector4cd b(rhs(0, 0), rhs(1, 0), rhs(0, 1), rhs(1, 1));
  const Eigen::Vector4cd x = k.fullPivLu().solve(b);
  Matrix2c out;
  out << x(0), x(2), x(1), x(3);
  return out;
}

PostBreakdown post_breakdown_tau(const SolutionBasis& basis, const DilationParams& d, double t) {
  const MetricState ms = metric::metric(basis, d, t);
  const Matrix2c tau = principal_sqrt(ms.eta - Matrix2c::Identity());
  const Matrix2c tau_dot = solve_sylvester(tau, ms.eta_dot);
  const Matrix2c h = model::hamiltonian(basis.params(), t);
  const Matrix2c h4 = (h + h.adjoint()) / 2.0;
  const DilatedHamiltonian blocks = assemble_blocks(h, tau, tau_dot, h4, H4Mode::hermitian_part);
  return {tau, relative(max_abs(blocks.h1 - blocks.h1.adjoint()), max_abs(blocks.h1))};
}

}  // namespace ptdilate::dilation
