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

#ifndef SQREADOUT_MODEL_PARAMS_HPP
#define SQREADOUT_MODEL_PARAMS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "sqreadout/errors.hpp"

namespace sqreadout {

/// Spin-resonator coupling used only by the back-action figures of merit.
struct SpinCoupling {
  double g_s = 0.0;
  double delta = 0.0;  // spin-resonator detuning, sign irrelevant
};

/// Resonator and qubit rates in internal units: the dispersive shift chi_s is
/// the rate unit (chi_s == 1) and times are measured in 1/chi_s.
///
/// The resonator detuning from the probe is fixed at zero; the quadrature
/// solution used everywhere downstream is only valid there.
struct SystemParams {
  double chi_s = 1.0;
  double kappa = 1.0;
  double t1_intrinsic = std::numeric_limits<double>::infinity();
  /// Weight of the resonator-vacuum noise term kappa/2 (F^2 + G^2). 0.25
  /// reproduces the published operating points; 1 is the literal formula.
  double vacuum_weight = 0.25;
  std::optional<SpinCoupling> coupling;

  void validate() const {
    detail::require(std::isfinite(chi_s) && chi_s > 0, "chi_s must be positive");
    detail::require(std::isfinite(kappa) && kappa > 0, "kappa must be positive");
    detail::require(t1_intrinsic > 0 && !std::isnan(t1_intrinsic), "t1_intrinsic must be positive");
    detail::require(std::isfinite(vacuum_weight) && vacuum_weight > 0, "vacuum_weight must be positive");
    if (coupling) {
      detail::require(std::isfinite(coupling->g_s) && coupling->g_s > 0, "g_s must be positive");
      detail::require(std::isfinite(coupling->delta) && coupling->delta != 0,
                      "delta must be nonzero (dispersive regime)");
    }
  }

  bool has_backaction() const { return coupling.has_value(); }
};

/// Laboratory scale for chi_s. Converts between microseconds and internal
/// time chi_s * t.
class UnitContext {
 public:
  explicit UnitContext(double chi_over_2pi_hz) : chi_over_2pi_hz_(chi_over_2pi_hz) {
    detail::require(std::isfinite(chi_over_2pi_hz) && chi_over_2pi_hz > 0,
                    "chi_over_2pi must be positive");
  }

  static UnitContext from_mhz(double chi_over_2pi_mhz) { return UnitContext(chi_over_2pi_mhz * 1e6); }

  double chi_over_2pi_hz() const { return chi_over_2pi_hz_; }
  /// chi_s in rad/s.
  double chi_angular() const { return 2.0 * std::numbers::pi * chi_over_2pi_hz_; }

  double to_internal_time(double t_us) const {
    detail::require(t_us >= 0, "time must be non-negative");
    return chi_angular() * t_us * 1e-6;
  }
  double to_physical_time_us(double t_internal) const { return t_internal / (chi_angular() * 1e-6); }

  double ms_to_internal(double t_ms) const { return chi_angular() * t_ms * 1e-3; }

 private:
  double chi_over_2pi_hz_;
};

/// Builds SystemParams from laboratory quantities. The resulting parameters
/// are in units where chi_s == 1.
inline SystemParams from_experimental(double chi_over_2pi_mhz, double kappa_over_chi, double t1_ms,
                                      double vacuum_weight = 0.25) {
  detail::require(std::isfinite(chi_over_2pi_mhz) && chi_over_2pi_mhz > 0,
                  "chi_over_2pi_mhz must be positive");
  detail::require(std::isfinite(kappa_over_chi) && kappa_over_chi > 0, "kappa_over_chi must be positive");
  detail::require(t1_ms > 0 && !std::isnan(t1_ms), "t1_ms must be positive");
  detail::require(std::isfinite(vacuum_weight) && vacuum_weight > 0, "vacuum_weight must be positive");
  const UnitContext units = UnitContext::from_mhz(chi_over_2pi_mhz);
  SystemParams p;
  p.chi_s = 1.0;
  p.kappa = kappa_over_chi;
  p.t1_intrinsic = units.ms_to_internal(t1_ms);
  p.vacuum_weight = vacuum_weight;
  p.validate();
  return p;
}

inline double to_internal_time(const UnitContext &ctx, double t_us) { return ctx.to_internal_time(t_us); }
inline double to_physical_time(const UnitContext &ctx, double t_internal) {
  return ctx.to_physical_time_us(t_internal);
}

}  // namespace sqreadout

#endif  // SQREADOUT_MODEL_PARAMS_HPP
