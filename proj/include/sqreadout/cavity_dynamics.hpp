// Copyright 2026 The sqreadout Authors
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

#ifndef SQREADOUT_CAVITY_DYNAMICS_HPP
#define SQREADOUT_CAVITY_DYNAMICS_HPP

#include <cmath>
#include <complex>
#include <tuple>
#include <utility>

#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"

namespace sqreadout {

/// Time-dependent coefficients of the resonator solution at time t:
///   f + i g = e^{(-kappa/2 + i chi) t}
///   F = int_0^t f,  G = int_0^t g
///   A = t - kappa int_0^t F,  B = kappa int_0^t G
struct CoefficientSet {
  double t = 0.0;
  double f = 1.0;
  double g = 0.0;
  double big_f = 0.0;
  double big_g = 0.0;
  double a_coef = 0.0;
  double b_coef = 0.0;
};

/// Row-major real 2x2 matrix acting on (Q, P).
struct Mat2 {
  double qq = 0.0, qp = 0.0;
  double pq = 0.0, pp = 0.0;

  double determinant() const { return qq * pp - qp * pq; }
  Mat2 transposed() const { return {qq, pq, qp, pp}; }
};

namespace detail {

inline void require_time(double t) { require(std::isfinite(t) && t >= 0, "time must be non-negative"); }

inline void require_sigma(int sigma) { require(sigma == 1 || sigma == -1, "qubit eigenvalue must be +1 or -1"); }

// phi_1(w) = (e^w - 1)/w and phi_2(w) = (e^w - 1 - w)/w^2. The power series
// is used for |w| < 1 where the direct forms cancel.
inline std::complex<double> phi1(std::complex<double> w) {
  if (std::abs(w) < 1.0) {
    std::complex<double> term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= w / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

inline std::complex<double> phi2(std::complex<double> w) {
  if (std::abs(w) < 1.0) {
    std::complex<double> term = 0.5, sum = 0.5;
    for (int k = 1; k < 30; ++k) {
      term *= w / static_cast<double>(k + 2);
      sum += term;
    }
    return sum;
  }
  return (std::exp(w) - 1.0 - w) / (w * w);
}

inline std::complex<double> generator(const SystemParams &params) { return {-0.5 * params.kappa, params.chi_s}; }

}  // namespace detail

/// (f, g) = e^{-kappa t/2} (cos chi t, sin chi t).
inline std::pair<double, double> envelopes(double t, const SystemParams &params) {
  detail::require_time(t);
  const double damp = std::exp(-0.5 * params.kappa * t);
  return {damp * std::cos(params.chi_s * t), damp * std::sin(params.chi_s * t)};
}

/// (F, G), the running integrals of the envelopes.
inline std::pair<double, double> first_integrals(double t, const SystemParams &params) {
  detail::require_time(t);
  const std::complex<double> v = t * detail::phi1(detail::generator(params) * t);
  return {v.real(), v.imag()};
}

/// (A, B). Uses int_0^t F(s) ds = int_0^t (t - s) f(s) ds = Re t^2 phi_2(z t).
inline std::pair<double, double> signal_coefficients(double t, const SystemParams &params) {
  detail::require_time(t);
  const std::complex<double> v = t * t * detail::phi2(detail::generator(params) * t);
  return {t - params.kappa * v.real(), params.kappa * v.imag()};
}

inline CoefficientSet coefficients(double t, const SystemParams &params) {
  CoefficientSet c;
  c.t = t;
  std::tie(c.f, c.g) = envelopes(t, params);
  std::tie(c.big_f, c.big_g) = first_integrals(t, params);
  std::tie(c.a_coef, c.b_coef) = signal_coefficients(t, params);
  return c;
}

/// Coefficients seen by a homodyne quadrature whose angle is offset by
/// delta_theta from the squeezed axis. Returns (B_rot, A_rot): B_rot
/// multiplies the anti-squeezed quadrature and A_rot the squeezed one.
inline std::pair<double, double> rotated_coefficients(double a_coef, double b_coef, double delta_theta) {
  const double c = std::cos(delta_theta);
  const double s = std::sin(delta_theta);
  return {b_coef * c + a_coef * s, -b_coef * s + a_coef * c};
}

/// e^{Mt} = f I - sigma g (i tau_y) as a real matrix on (Q, P).
inline Mat2 propagator(double t, const SystemParams &params, int sigma) {
  detail::require_sigma(sigma);
  const auto [f, g] = envelopes(t, params);
  const double s = static_cast<double>(sigma);
  return {f, -s * g, s * g, f};
}

/// Linear maps giving the time-integrated output quadratures
///   (int Q_out, int P_out) = input * (Q_in, P_in) + vacuum * (Q(0), P(0))
/// for qubit eigenvalue sigma.
struct IntegratedOutputMap {
  Mat2 input;
  Mat2 vacuum;
};

inline IntegratedOutputMap integrated_output_map(const CoefficientSet &c, const SystemParams &params, int sigma) {
  detail::require_sigma(sigma);
  const double s = static_cast<double>(sigma);
  const double rk = std::sqrt(params.kappa);
  IntegratedOutputMap m;
  m.input = {c.a_coef, s * c.b_coef, -s * c.b_coef, c.a_coef};
  m.vacuum = {rk * c.big_f, -s * rk * c.big_g, s * rk * c.big_g, rk * c.big_f};
  return m;
}

}  // namespace sqreadout

#endif  // SQREADOUT_CAVITY_DYNAMICS_HPP
