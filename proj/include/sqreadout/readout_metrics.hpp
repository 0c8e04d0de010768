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

#ifndef SQREADOUT_READOUT_METRICS_HPP
#define SQREADOUT_READOUT_METRICS_HPP

#include <cmath>
#include <numbers>
#include <optional>

#include "sqreadout/cavity_dynamics.hpp"
#include "sqreadout/erf.hpp"
#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/probe_states.hpp"

namespace sqreadout {

/// Homodyne angle of the amplitude-quadrature-insensitive measurement used
/// throughout (P_out).
inline constexpr double kPhaseQuadrature = std::numbers::pi / 2;

/// Analytic readout statistics of the integrated homodyne record at one
/// operating point.
struct ReadoutPoint {
  double t = 0.0;
  double lo_phase = kPhaseQuadrature;
  double mean_plus = 0.0;
  double mean_minus = 0.0;
  double contrast = 0.0;
  double variance_plus = 0.0;
  double variance_minus = 0.0;
  double snr = 0.0;
  double fidelity = 0.0;
  /// False when t exceeds a tenth of T1, where the exponential decay factor
  /// stops being a small correction.
  bool short_time_ok = true;
};

/// Variance split by origin. The squeezed/anti-squeezed pieces come from the
/// input field, the last one from the initial resonator vacuum.
struct VarianceTerms {
  double squeezed = 0.0;
  double antisqueezed = 0.0;
  double vacuum = 0.0;

  double total() const { return squeezed + antisqueezed + vacuum; }
};

/// Mean of the integrated record for qubit eigenvalue sigma,
///   <M> = A <X_phi> + sigma B <X_{phi + pi/2}>,
/// which at phi = pi/2 is A <P_in> - sigma B <Q_in>.
inline double integrated_signal_mean(double t, const ProbeState &probe, const SystemParams &params, int sigma,
                                     double phi = kPhaseQuadrature) {
  detail::require_sigma(sigma);
  const auto [a, b] = signal_coefficients(t, params);
  const double amp = std::numbers::sqrt2 * probe.alpha();
  const double along = amp * std::cos(probe.theta_alpha() - phi);
  const double across = amp * std::sin(probe.theta_alpha() - phi);
  return a * along + static_cast<double>(sigma) * b * across;
}

inline double contrast(double t, const ProbeState &probe, const SystemParams &params,
                       double phi = kPhaseQuadrature) {
  const auto [a, b] = signal_coefficients(t, params);
  (void)a;
  return 2.0 * std::numbers::sqrt2 * probe.alpha() * std::abs(b) * std::abs(std::sin(probe.theta_alpha() - phi));
}

inline VarianceTerms variance_terms(double t, const ProbeState &probe, const SystemParams &params, double phi,
                                    int sigma) {
  detail::require_sigma(sigma);
  const CoefficientSet c = coefficients(t, params);
  const double delta_theta = phi - 0.5 * probe.theta_xi();
  const auto [b_rot, a_rot] = rotated_coefficients(c.a_coef, static_cast<double>(sigma) * c.b_coef, delta_theta);
  VarianceTerms v;
  v.squeezed = 0.5 * std::exp(-2.0 * probe.r()) * a_rot * a_rot;
  v.antisqueezed = 0.5 * std::exp(2.0 * probe.r()) * b_rot * b_rot;
  v.vacuum = params.vacuum_weight * 0.5 * params.kappa * (c.big_f * c.big_f + c.big_g * c.big_g);
  return v;
}

/// Variance of the integrated record for qubit eigenvalue sigma. With
/// delta_theta = phi - theta_xi/2 the anti-squeezed quadrature couples through
/// B cos + A sin and the squeezed one through A cos - B sin (B -> sigma B).
inline double integrated_variance(double t, const ProbeState &probe, const SystemParams &params, double phi,
                                  int sigma) {
  return variance_terms(t, probe, params, phi, sigma).total();
}

inline double snr(double t, const ProbeState &probe, const SystemParams &params, double phi = kPhaseQuadrature) {
  detail::require(std::isfinite(t) && t > 0, "SNR is undefined at t <= 0");
  const double sd = std::sqrt(integrated_variance(t, probe, params, phi, +1)) +
                    std::sqrt(integrated_variance(t, probe, params, phi, -1));
  return contrast(t, probe, params, phi) / sd;
}

/// exp(-t / 2 T1) erf(SNR / sqrt 2). T1 may be infinite.
inline double fidelity(double t, double snr_value, double t1_total) {
  detail::require(t1_total > 0 && !std::isnan(t1_total), "T1 must be positive");
  detail::require(std::isfinite(t) && t >= 0, "time must be non-negative");
  detail::require(snr_value >= 0 && !std::isnan(snr_value), "SNR must be non-negative");
  const double decay = std::isinf(t1_total) ? 1.0 : std::exp(-t / (2.0 * t1_total));
  if (std::isinf(snr_value)) {
    return decay;
  }
  return decay * sqreadout::erf(snr_value / std::numbers::sqrt2);
}

inline bool fidelity_short_time_ok(double t, double t1_total) { return t <= 0.1 * t1_total; }

inline ReadoutPoint evaluate_point(double t, const ProbeState &probe, const SystemParams &params, double phi,
                                   double t1_total) {
  ReadoutPoint p;
  p.t = t;
  p.lo_phase = phi;
  p.mean_plus = integrated_signal_mean(t, probe, params, +1, phi);
  p.mean_minus = integrated_signal_mean(t, probe, params, -1, phi);
  p.contrast = contrast(t, probe, params, phi);
  p.variance_plus = integrated_variance(t, probe, params, phi, +1);
  p.variance_minus = integrated_variance(t, probe, params, phi, -1);
  detail::require(t > 0, "SNR is undefined at t <= 0");
  p.snr = p.contrast / (std::sqrt(p.variance_plus) + std::sqrt(p.variance_minus));
  p.fidelity = fidelity(t, p.snr, t1_total);
  p.short_time_ok = fidelity_short_time_ok(t, t1_total);
  return p;
}

inline ReadoutPoint evaluate_point(double t, const ProbeState &probe, const SystemParams &params,
                                   double phi = kPhaseQuadrature) {
  return evaluate_point(t, probe, params, phi, params.t1_intrinsic);
}

/// Short-time estimate e^{-r} sqrt(6 / (kappa chi_s)) of the SNR-optimal
/// readout time at fixed squeezing.
inline double optimal_time_estimate(double r, const SystemParams &params) {
  detail::require(std::isfinite(r) && r >= 0, "r must be non-negative");
  return std::exp(-r) * std::sqrt(6.0 / (params.kappa * params.chi_s));
}

/// Squeezing that minimizes e^{-2r} A^2 + e^{2r} B^2 at matched phases,
/// r* = ln(A/B)/2. Empty when there is no optimum with r >= 0 (A <= 0, or
/// A < B).
inline std::optional<double> optimal_squeezing(double t, const SystemParams &params) {
  detail::require(std::isfinite(t) && t > 0, "optimal squeezing needs t > 0");
  const auto [a, b] = signal_coefficients(t, params);
  if (!(a > 0 && b > 0) || a < b) {
    return std::nullopt;
  }
  return 0.5 * std::log(a / b);
}

struct PhaseMatching {
  /// Distance of theta_alpha - phi from the nearest (m + 1/2) pi.
  double contrast_residual = 0.0;
  /// Distance of phi - theta_xi/2 from the nearest m' pi.
  double squeezing_residual = 0.0;
  /// Distance of 2 theta_alpha - theta_xi from the nearest odd multiple of pi.
  double combined_residual = 0.0;
  bool matched = false;
};

namespace detail {

inline double distance_to_multiple(double x, double period) { return std::abs(std::remainder(x, period)); }

}  // namespace detail

inline PhaseMatching phase_matching_residual(double theta_alpha, double theta_xi, double phi) {
  constexpr double pi = std::numbers::pi;
  PhaseMatching m;
  m.contrast_residual = detail::distance_to_multiple(theta_alpha - phi - 0.5 * pi, pi);
  m.squeezing_residual = detail::distance_to_multiple(phi - 0.5 * theta_xi, pi);
  m.combined_residual = detail::distance_to_multiple(2.0 * theta_alpha - theta_xi - pi, 2.0 * pi);
  m.matched = m.contrast_residual < 1e-9 && m.squeezing_residual < 1e-9;
  return m;
}

}  // namespace sqreadout

#endif  // SQREADOUT_READOUT_METRICS_HPP
