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

#ifndef SQREADOUT_PROBE_STATES_HPP
#define SQREADOUT_PROBE_STATES_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include "sqreadout/errors.hpp"

namespace sqreadout {

/// Maps an angle onto (-pi, pi].
inline double reduce_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::remainder(angle, two_pi);  // [-pi, pi]
  if (reduced <= -std::numbers::pi) {
    reduced += two_pi;
  }
  return reduced;
}

/// Displaced squeezed vacuum D(alpha) S(xi) |0> with alpha = |alpha| e^{i theta_alpha}
/// and xi = r e^{i theta_xi}.
class ProbeState {
 public:
  ProbeState() = default;
  ProbeState(double alpha, double theta_alpha, double r, double theta_xi)
      : alpha_(alpha), theta_alpha_(reduce_angle(theta_alpha)), r_(r), theta_xi_(reduce_angle(theta_xi)) {
    detail::require(std::isfinite(alpha) && alpha >= 0, "alpha must be non-negative");
    detail::require(std::isfinite(r) && r >= 0, "r must be non-negative");
    detail::require(std::isfinite(theta_alpha) && std::isfinite(theta_xi), "phases must be finite");
    // cosh(2r) must stay representable for the noise ellipse.
    detail::require(r < 300, "r too large");
  }

  static ProbeState coherent(double alpha, double theta_alpha = 0.0) { return {alpha, theta_alpha, 0.0, 0.0}; }

  double alpha() const { return alpha_; }
  double theta_alpha() const { return theta_alpha_; }
  double r() const { return r_; }
  double theta_xi() const { return theta_xi_; }

  ProbeState with_r(double r) const { return {alpha_, theta_alpha_, r, theta_xi_}; }
  ProbeState with_alpha(double alpha) const { return {alpha, theta_alpha_, r_, theta_xi_}; }
  ProbeState with_theta_xi(double theta_xi) const { return {alpha_, theta_alpha_, r_, theta_xi}; }

 private:
  double alpha_ = 0.0;
  double theta_alpha_ = 0.0;
  double r_ = 0.0;
  double theta_xi_ = 0.0;
};

/// First and second moments of (Q, P) with Q = (b + b^dag)/sqrt2, P = (b - b^dag)/(i sqrt2).
/// Vacuum variance is 1/2.
struct QuadratureStats {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.5;
  double var_p = 0.5;
  double cov_qp = 0.0;  // symmetrized

  double determinant() const { return var_q * var_p - cov_qp * cov_qp; }
};

struct QuadratureMeans {
  double q;
  double p;
};

inline QuadratureMeans input_means(const ProbeState &probe) {
  const double amp = std::numbers::sqrt2 * probe.alpha();
  return {amp * std::cos(probe.theta_alpha()), amp * std::sin(probe.theta_alpha())};
}

/// Full Gaussian statistics of the input field. The squeezed axis is the
/// quadrature at angle theta_xi / 2, with variance e^{-2r}/2.
inline QuadratureStats input_covariance(const ProbeState &probe) {
  const double ch = std::cosh(2.0 * probe.r());
  const double sh = std::sinh(2.0 * probe.r());
  const double c = std::cos(probe.theta_xi());
  const double s = std::sin(probe.theta_xi());
  const QuadratureMeans means = input_means(probe);
  QuadratureStats stats;
  stats.mean_q = means.q;
  stats.mean_p = means.p;
  stats.var_q = 0.5 * (ch - c * sh);
  stats.var_p = 0.5 * (ch + c * sh);
  stats.cov_qp = -0.5 * s * sh;
  return stats;
}

/// Variance of X_phi = Q cos(phi) + P sin(phi).
inline double rotated_quadrature_variance(const ProbeState &probe, double phi) {
  return 0.5 * (std::cosh(2.0 * probe.r()) - std::cos(2.0 * phi - probe.theta_xi()) * std::sinh(2.0 * probe.r()));
}

/// Displacement of S(xi) D(gamma)|0> written as D(alpha) S(xi)|0>.
inline std::complex<double> displacement_from_squeezed_coherent(std::complex<double> gamma, double r,
                                                                double theta_xi) {
  detail::require(std::isfinite(r) && r >= 0, "r must be non-negative");
  return gamma * std::cosh(r) - std::conj(gamma) * std::sinh(r) * std::polar(1.0, theta_xi);
}

/// Converts a squeezed coherent state to the equivalent ProbeState.
inline ProbeState probe_from_squeezed_coherent(std::complex<double> gamma, double r, double theta_xi) {
  const std::complex<double> alpha = displacement_from_squeezed_coherent(gamma, r, theta_xi);
  return {std::abs(alpha), std::arg(alpha), r, theta_xi};
}

inline double mean_photon_number(const ProbeState &probe) {
  const double sh = std::sinh(probe.r());
  return probe.alpha() * probe.alpha() + sh * sh;
}

}  // namespace sqreadout

#endif  // SQREADOUT_PROBE_STATES_HPP
