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

#ifndef SQREADOUT_SWEEP_ENGINE_HPP
#define SQREADOUT_SWEEP_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqreadout/cavity_dynamics.hpp"
#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/parallel.hpp"
#include "sqreadout/probe_states.hpp"
#include "sqreadout/readout_metrics.hpp"

namespace sqreadout {

/// Everything needed to evaluate one readout metric.
struct OperatingPoint {
  SystemParams params;
  ProbeState probe;
  double lo_phase = kPhaseQuadrature;
  double t = 0.0;
  /// T1 entering the fidelity decay factor.
  double t1 = std::numeric_limits<double>::infinity();

  double delta_theta() const { return lo_phase - 0.5 * probe.theta_xi(); }
};

enum class SweepVariable { kTime, kSqueezing, kDeltaTheta, kAlpha, kKappa };
enum class Metric { kSnr, kFidelity, kContrast, kVariance };

inline std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kTime: return "t";
    case SweepVariable::kSqueezing: return "r";
    case SweepVariable::kDeltaTheta: return "delta_theta";
    case SweepVariable::kAlpha: return "alpha";
    case SweepVariable::kKappa: return "kappa";
  }
  return "?";
}

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kSnr: return "snr";
    case Metric::kFidelity: return "fidelity";
    case Metric::kContrast: return "contrast";
    case Metric::kVariance: return "variance";
  }
  return "?";
}

inline SweepVariable parse_sweep_variable(std::string_view s) {
  for (auto v : {SweepVariable::kTime, SweepVariable::kSqueezing, SweepVariable::kDeltaTheta, SweepVariable::kAlpha,
                 SweepVariable::kKappa}) {
    if (to_string(v) == s) return v;
  }
  throw ValidationError("unknown sweep variable '" + std::string(s) + "'");
}

inline Metric parse_metric(std::string_view s) {
  for (auto m : {Metric::kSnr, Metric::kFidelity, Metric::kContrast, Metric::kVariance}) {
    if (to_string(m) == s) return m;
  }
  throw ValidationError("unknown metric '" + std::string(s) + "'");
}

/// Moves one coordinate of `point`. delta_theta is changed through the
/// squeezing phase, theta_xi = 2 (phi - delta_theta), so the displacement and
/// LO phases, and with them the contrast, stay fixed.
inline OperatingPoint with_variable(OperatingPoint point, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::kTime:
      detail::require_time(value);
      point.t = value;
      break;
    case SweepVariable::kSqueezing:
      point.probe = point.probe.with_r(value);
      break;
    case SweepVariable::kDeltaTheta:
      point.probe = point.probe.with_theta_xi(2.0 * (point.lo_phase - value));
      break;
    case SweepVariable::kAlpha:
      point.probe = point.probe.with_alpha(value);
      break;
    case SweepVariable::kKappa:
      point.params.kappa = value;
      point.params.validate();
      break;
  }
  return point;
}

inline double evaluate_metric(const OperatingPoint &point, Metric metric) {
  switch (metric) {
    case Metric::kContrast:
      return contrast(point.t, point.probe, point.params, point.lo_phase);
    case Metric::kVariance:
      return 0.5 * (integrated_variance(point.t, point.probe, point.params, point.lo_phase, +1) +
                    integrated_variance(point.t, point.probe, point.params, point.lo_phase, -1));
    case Metric::kSnr:
      return snr(point.t, point.probe, point.params, point.lo_phase);
    case Metric::kFidelity:
      return evaluate_point(point.t, point.probe, point.params, point.lo_phase, point.t1).fidelity;
  }
  return 0.0;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = (i + 1 == points) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return xs;
}

struct PeakResult {
  double location = 0.0;
  double value = 0.0;
  /// The metric was constant over the coarse scan; location is the lower bound.
  bool flat = false;
};

inline constexpr std::size_t kCoarsePeakSamples = 32;

/// Maximizes a unimodal function on [lo, hi] by golden-section search to a
/// bracket width of `tol`. A 32-point coarse scan picks the starting bracket
/// and rejects functions with more than one strict local maximum.
template <typename Fn>
PeakResult find_peak(Fn &&fn, double lo, double hi, double tol = 1e-6) {
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "peak bounds must satisfy lo < hi");
  detail::require(tol > 0, "tolerance must be positive");
  auto eval = [&](double x) {
    const double v = fn(x);
    if (!std::isfinite(v)) {
      throw NumericalError("metric is not finite at " + std::to_string(x));
    }
    return v;
  };

  const std::vector<double> xs = linspace(lo, hi, kCoarsePeakSamples);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = eval(xs[i]);
  }
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  if (*ymax - *ymin <= 1e-14 * std::max(1.0, std::abs(*ymax))) {
    return {lo, ys.front(), true};
  }
  const std::size_t last = xs.size() - 1;
  std::size_t maxima = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const bool above_left = i == 0 || ys[i] > ys[i - 1];
    const bool above_right = i == last || ys[i] > ys[i + 1];
    maxima += (above_left && above_right) ? 1 : 0;
  }
  if (maxima > 1) {
    throw NumericalError("metric is not unimodal on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  const std::size_t best = static_cast<std::size_t>(ymax - ys.begin());
  double a = xs[best == 0 ? 0 : best - 1];
  double b = xs[std::min(best + 1, last)];
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  PeakResult peak;
  peak.location = 0.5 * (a + b);
  peak.value = eval(peak.location);
  // Endpoint maxima are never beaten by the interior of the bracket.
  if (ys[best] > peak.value) {
    peak.location = xs[best];
    peak.value = ys[best];
  }
  return peak;
}

inline PeakResult find_peak(Metric metric, SweepVariable variable, double lo, double hi, const OperatingPoint &fixed,
                            double tol = 1e-6) {
  return find_peak([&](double x) { return evaluate_metric(with_variable(fixed, variable, x), metric); }, lo, hi, tol);
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::kTime;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 400;
  OperatingPoint fixed;
  Metric metric = Metric::kSnr;
  bool find_peak = false;

  void validate() const {
    detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "sweep range must satisfy lo < hi");
    detail::require(points >= 2, "sweep needs at least 2 points");
    fixed.params.validate();
  }
};

struct SweepRow {
  double value = 0.0;
  double metric = 0.0;
  /// False when the metric is undefined at this grid point (e.g. SNR at t = 0).
  bool valid = true;
  CoefficientSet coefs;
  VarianceTerms terms_plus;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::optional<PeakResult> peak;
};

inline SweepResult run_sweep(const SweepSpec &spec, unsigned threads = 0) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  const std::vector<double> grid = linspace(spec.lo, spec.hi, spec.points);
  result.rows.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    SweepRow &row = result.rows[i];
    row.value = grid[i];
    try {
      const OperatingPoint point = with_variable(spec.fixed, spec.variable, grid[i]);
      row.coefs = coefficients(point.t, point.params);
      row.terms_plus = variance_terms(point.t, point.probe, point.params, point.lo_phase, +1);
      row.metric = evaluate_metric(point, spec.metric);
      row.valid = std::isfinite(row.metric);
    } catch (const ValidationError &) {
      row.valid = false;
      row.metric = 0.0;
    }
  });

  if (spec.find_peak) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      if (result.rows[i].valid && (!best || result.rows[i].metric > result.rows[*best].metric)) {
        best = i;
      }
    }
    if (best) {
      PeakResult peak{result.rows[*best].value, result.rows[*best].metric, false};
      const std::size_t i = *best;
      const bool interior = i > 0 && i + 1 < grid.size() && result.rows[i - 1].valid && result.rows[i + 1].valid;
      if (interior) {
        // Refine inside the neighbouring bracket; keep the grid value if it wins.
        const double a = grid[i - 1], b = grid[i + 1];
        try {
          const PeakResult refined = find_peak(spec.metric, spec.variable, a, b, spec.fixed, 1e-9 * (b - a));
          if (!refined.flat && refined.value > peak.value) {
            peak = refined;
          }
        } catch (const NumericalError &) {
          // Grid maximum stands.
        }
      }
      result.peak = peak;
    }
  }
  return result;
}

// Published operating points.

inline constexpr double kFigureChiOver2PiMhz = 0.15;
inline constexpr double kFigureT1Ms = 3.0;
inline constexpr double kFigure3TimeUs = 0.714;
inline constexpr double kFigure3Squeezing = 0.74;

enum class Fig2Panel { kAB, kCD };

inline double fig2_kappa_over_chi(Fig2Panel panel) { return panel == Fig2Panel::kAB ? 1.0 : 2.0; }

/// alpha = sqrt 30, theta_alpha = 0, theta_xi = pi, phi = pi/2, T1 = 3 ms.
inline OperatingPoint fig2_point(Fig2Panel panel, double r, double t_us, double vacuum_weight = 0.25) {
  const UnitContext units = UnitContext::from_mhz(kFigureChiOver2PiMhz);
  OperatingPoint p;
  p.params = from_experimental(kFigureChiOver2PiMhz, fig2_kappa_over_chi(panel), kFigureT1Ms, vacuum_weight);
  p.probe = ProbeState(std::sqrt(30.0), 0.0, r, std::numbers::pi);
  p.lo_phase = kPhaseQuadrature;
  p.t = units.to_internal_time(t_us);
  p.t1 = p.params.t1_intrinsic;
  return p;
}

/// |alpha| = 10, kappa = 2 chi_s, t = 0.714 us, matched phases.
inline OperatingPoint fig3_point(double r = kFigure3Squeezing, double vacuum_weight = 0.25) {
  const UnitContext units = UnitContext::from_mhz(kFigureChiOver2PiMhz);
  OperatingPoint p;
  p.params = from_experimental(kFigureChiOver2PiMhz, 2.0, kFigureT1Ms, vacuum_weight);
  p.probe = ProbeState(10.0, 0.0, r, std::numbers::pi);
  p.lo_phase = kPhaseQuadrature;
  p.t = units.to_internal_time(kFigure3TimeUs);
  p.t1 = p.params.t1_intrinsic;
  return p;
}

inline const std::vector<double> &default_fig2_squeezings() {
  static const std::vector<double> values = {0.0, 0.425, 0.85, 1.275};
  return values;
}

inline constexpr std::size_t kFigureGridPoints = 400;

struct Fig2Row {
  Fig2Panel panel;
  double kappa_over_chi;
  double r;
  double t_us;
  double snr;
  double fidelity;
};

/// SNR and fidelity against readout time on (0, 2] us for each squeezing in
/// `squeezings`. The t = 0 grid point is dropped (SNR undefined).
inline std::vector<Fig2Row> reproduce_figure2(Fig2Panel panel, const std::vector<double> &squeezings,
                                              double vacuum_weight = 0.25, unsigned threads = 0) {
  const std::vector<double> times = linspace(0.0, 2.0, kFigureGridPoints);
  std::vector<Fig2Row> rows;
  for (double r : squeezings) {
    std::vector<Fig2Row> block(times.size() - 1);
    parallel_for(block.size(), threads, [&](std::size_t i) {
      const double t_us = times[i + 1];
      const OperatingPoint p = fig2_point(panel, r, t_us, vacuum_weight);
      const ReadoutPoint rp = evaluate_point(p.t, p.probe, p.params, p.lo_phase, p.t1);
      block[i] = {panel, fig2_kappa_over_chi(panel), r, t_us, rp.snr, rp.fidelity};
    });
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

struct Fig3Row {
  double x;
  double snr;
  double fidelity;
  double snr_coherent;
  double fidelity_coherent;
};

struct Fig3Tables {
  /// Delta theta on [-pi, pi] at r = 0.74.
  std::vector<Fig3Row> delta_theta;
  /// r on [0, 2] at Delta theta = 0.
  std::vector<Fig3Row> squeezing;
};

inline Fig3Tables reproduce_figure3(double vacuum_weight = 0.25, unsigned threads = 0) {
  const OperatingPoint base = fig3_point(kFigure3Squeezing, vacuum_weight);
  const OperatingPoint coherent = with_variable(base, SweepVariable::kSqueezing, 0.0);
  const ReadoutPoint ref = evaluate_point(coherent.t, coherent.probe, coherent.params, coherent.lo_phase, coherent.t1);

  auto fill = [&](SweepVariable variable, const std::vector<double> &grid) {
    std::vector<Fig3Row> rows(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
      const OperatingPoint p = with_variable(base, variable, grid[i]);
      const ReadoutPoint rp = evaluate_point(p.t, p.probe, p.params, p.lo_phase, p.t1);
      rows[i] = {grid[i], rp.snr, rp.fidelity, ref.snr, ref.fidelity};
    });
    return rows;
  };
  Fig3Tables tables;
  tables.delta_theta = fill(SweepVariable::kDeltaTheta, linspace(-std::numbers::pi, std::numbers::pi, kFigureGridPoints));
  tables.squeezing = fill(SweepVariable::kSqueezing, linspace(0.0, 2.0, kFigureGridPoints));
  return tables;
}

}  // namespace sqreadout

#endif  // SQREADOUT_SWEEP_ENGINE_HPP
