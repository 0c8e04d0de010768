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

#ifndef SQREADOUT_BACKACTION_HPP
#define SQREADOUT_BACKACTION_HPP

#include <cmath>

#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/probe_states.hpp"

namespace sqreadout {

inline constexpr double kDefaultNondemolitionRatio = 0.1;

struct BackactionReport {
  double gamma_purcell = 0.0;
  double t1_induced = 0.0;
  double t2_penalty_factor = 1.0;
  double n_critical = 0.0;
  double photon_ratio = 0.0;
  bool nondemolition_ok = true;
};

struct CriticalPhotonCheck {
  double n_critical;
  double ratio;
  bool ok;
};

namespace detail {

inline const SpinCoupling &require_coupling(const SystemParams &params) {
  require(params.coupling.has_value(), "back-action needs g_s and delta");
  const SpinCoupling &c = *params.coupling;
  require(c.g_s > 0, "g_s must be positive");
  require(c.delta != 0, "delta must be nonzero (dispersive regime)");
  return c;
}

}  // namespace detail

/// kappa g_s^2 / delta^2.
inline double purcell_rate(const SystemParams &params) {
  const SpinCoupling &c = detail::require_coupling(params);
  const double ratio = c.g_s / c.delta;
  return params.kappa * ratio * ratio;
}

/// 1/T1 = 2 gamma_pu cosh 2r.
inline double induced_t1_inverse(double r, double gamma_pu) {
  detail::require(std::isfinite(r) && r >= 0, "r must be non-negative");
  detail::require(gamma_pu >= 0, "Purcell rate must be non-negative");
  return 2.0 * gamma_pu * std::cosh(2.0 * r);
}

/// Factor by which squeezing shortens the probe-induced T2.
inline double t2_penalty(double r) {
  detail::require(std::isfinite(r) && r >= 0, "r must be non-negative");
  return std::exp(2.0 * r);
}

/// n_c = delta^2 / 4 g_s^2 and the probe's mean photon number relative to it.
inline CriticalPhotonCheck critical_photon_check(const ProbeState &probe, const SystemParams &params,
                                                 double threshold = kDefaultNondemolitionRatio) {
  const SpinCoupling &c = detail::require_coupling(params);
  const double n_c = c.delta * c.delta / (4.0 * c.g_s * c.g_s);
  const double ratio = mean_photon_number(probe) / n_c;
  return {n_c, ratio, ratio < threshold};
}

/// Intrinsic T1 combined with the probe-induced rate when the spin coupling
/// is known.
inline double total_t1(const SystemParams &params, double r) {
  if (!params.has_backaction()) {
    return params.t1_intrinsic;
  }
  const double rate = 1.0 / params.t1_intrinsic + induced_t1_inverse(r, purcell_rate(params));
  return rate > 0 ? 1.0 / rate : params.t1_intrinsic;
}

inline BackactionReport backaction_report(const ProbeState &probe, const SystemParams &params,
                                          double threshold = kDefaultNondemolitionRatio) {
  BackactionReport report;
  report.gamma_purcell = purcell_rate(params);
  report.t1_induced = 1.0 / induced_t1_inverse(probe.r(), report.gamma_purcell);
  report.t2_penalty_factor = t2_penalty(probe.r());
  const CriticalPhotonCheck check = critical_photon_check(probe, params, threshold);
  report.n_critical = check.n_critical;
  report.photon_ratio = check.ratio;
  report.nondemolition_ok = check.ok;
  return report;
}

}  // namespace sqreadout

#endif  // SQREADOUT_BACKACTION_HPP
