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

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sqreadout/readout_metrics.hpp"

namespace sqreadout {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double kT3 = 0.6729291463989337;      // 0.714 us
constexpr double kT1us = 0.9424777960769379;    // 1 us
constexpr double kT1Fig = 2827.4333882308138;   // 3 ms

SystemParams params(double kappa, double u = 0.25, double t1 = kT1Fig) {
  SystemParams p;
  p.kappa = kappa;
  p.vacuum_weight = u;
  p.t1_intrinsic = t1;
  return p;
}

TEST(SignalMean, Examples) {
  const SystemParams p = params(2);
  EXPECT_EQ(integrated_signal_mean(kT3, ProbeState(0, 0, 0.5, pi), p, +1), 0.0);
  EXPECT_EQ(integrated_signal_mean(kT3, ProbeState(0, 0, 0.5, pi), p, -1), 0.0);
  const ProbeState probe(10, 0, 0.74, pi);
  EXPECT_NEAR(integrated_signal_mean(kT3, probe, p, +1), -1.01702489859554, 1e-13);
  EXPECT_NEAR(integrated_signal_mean(kT3, probe, p, -1), 1.01702489859554, 1e-13);
  const ProbeState rotated(10, pi / 2, 0.74, pi);
  EXPECT_NEAR(integrated_signal_mean(kT3, rotated, p, +1), integrated_signal_mean(kT3, rotated, p, -1), 1e-13);
  EXPECT_THROW(integrated_signal_mean(-1.0, probe, p, +1), ValidationError);
}

TEST(Contrast, Examples) {
  const SystemParams p = params(2);
  const ProbeState probe(10, 0.3, 0.74, pi);
  EXPECT_NEAR(contrast(kT3, probe, p, 0.3), 0.0, 1e-15);
  EXPECT_NEAR(contrast(kT3, ProbeState(10, 0, 0.74, pi), p), 2.03404979719108, 1e-13);
  oracle::Gen gen(20);
  for (int i = 0; i < 100; ++i) {
    const double phi = gen.uniform(-pi, pi);
    EXPECT_NEAR(contrast(kT3, probe, p, phi), contrast(kT3, probe, p, phi + pi), 1e-13);
    // Contrast equals the separation of the two means.
    EXPECT_NEAR(contrast(kT3, probe, p, phi),
                std::abs(integrated_signal_mean(kT3, probe, p, +1, phi) - integrated_signal_mean(kT3, probe, p, -1, phi)),
                1e-13);
  }
}

TEST(IntegratedVariance, CoherentInputIsRotationInvariant) {
  const SystemParams p = params(2);
  const CoefficientSet c = coefficients(kT3, p);
  const double expected = 0.5 * (c.a_coef * c.a_coef + c.b_coef * c.b_coef) +
                          0.25 * 1.0 * (c.big_f * c.big_f + c.big_g * c.big_g);
  oracle::Gen gen(21);
  for (int i = 0; i < 50; ++i) {
    const ProbeState probe(3, gen.uniform(-pi, pi), 0.0, gen.uniform(-pi, pi));
    const double phi = gen.uniform(-pi, pi);
    EXPECT_NEAR(integrated_variance(kT3, probe, p, phi, +1), expected, 1e-15);
    EXPECT_NEAR(integrated_variance(kT3, probe, p, phi, -1), expected, 1e-15);
  }
}

TEST(IntegratedVariance, Fig3Values) {
  const SystemParams p = params(2);
  const ProbeState matched(10, 0, 0.74, pi);
  EXPECT_NEAR(integrated_variance(kT3, matched, p, pi / 2, +1), 0.0806628161330537, 1e-14);
  EXPECT_NEAR(integrated_variance(kT3, matched, p, pi / 2, -1), 0.0806628161330537, 1e-14);
  // Delta theta = pi/2: theta_xi = 0 with phi = pi/2.
  const ProbeState quarter(10, 0, 0.74, 0.0);
  EXPECT_NEAR(integrated_variance(kT3, quarter, p, pi / 2, +1), 0.280504208737051, 1e-14);
}

TEST(IntegratedVariance, LiteralFormulaAtMatchedPhase) {
  const SystemParams p = params(2, 1.0);
  const CoefficientSet c = coefficients(kT3, p);
  for (double r : {0.0, 0.4, 0.85, 1.6}) {
    const double literal = std::exp(-2 * r) / 2 * c.a_coef * c.a_coef + std::exp(2 * r) / 2 * c.b_coef * c.b_coef +
                           p.kappa / 2 * (c.big_f * c.big_f + c.big_g * c.big_g);
    EXPECT_NEAR(integrated_variance(kT3, ProbeState(1, 0, r, pi), p, pi / 2, +1), literal, 1e-14);
  }
}

TEST(IntegratedVariance, MatchesLabFrameCovarianceRoute) {
  oracle::Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const SystemParams p = params(gen.uniform(0.5, 4), gen.uniform(0.1, 1.0));
    const double t = gen.uniform(0.01, 3);
    const ProbeState probe(gen.uniform(0, 10), gen.uniform(-pi, pi), gen.uniform(0, 2), gen.uniform(-pi, pi));
    const double phi = gen.uniform(-pi, pi);
    const QuadratureStats s = input_covariance(probe);
    const CoefficientSet c = coefficients(t, p);
    for (int sigma : {+1, -1}) {
      const double lab = oracle::lab_frame_variance(c.a_coef, c.b_coef, c.big_f, c.big_g, p.kappa, p.vacuum_weight,
                                                    s.var_q, s.var_p, s.cov_qp, phi, sigma);
      EXPECT_NEAR(integrated_variance(t, probe, p, phi, sigma), lab, 1e-11 * std::max(1.0, lab));
    }
  }
}

TEST(Snr, Fig3Values) {
  const SystemParams p = params(2);
  EXPECT_NEAR(snr(kT3, ProbeState(10, 0, 0.74, pi), p), 3.58092228027178, 1e-12);
  EXPECT_NEAR(snr(kT3, ProbeState(10, 0, 0.0, pi), p), 3.05339293327503, 1e-12);
  EXPECT_EQ(snr(kT3, ProbeState(0, 0, 0.74, pi), p), 0.0);
  EXPECT_THROW(snr(0.0, ProbeState(10, 0, 0.74, pi), p), ValidationError);
}

TEST(Snr, ReadoutPointStructure) {
  oracle::Gen gen(23);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p = params(gen.uniform(0.5, 4));
    const ProbeState probe(gen.uniform(0, 12), gen.uniform(-pi, pi), gen.uniform(0, 2), gen.uniform(-pi, pi));
    const ReadoutPoint rp = evaluate_point(gen.uniform(0.01, 3), probe, p, gen.uniform(-pi, pi));
    EXPECT_DOUBLE_EQ(rp.snr, rp.contrast / (std::sqrt(rp.variance_plus) + std::sqrt(rp.variance_minus)));
    EXPECT_GE(rp.contrast, 0);
    EXPECT_GT(rp.variance_plus, 0);
    EXPECT_GT(rp.variance_minus, 0);
    EXPECT_GE(rp.fidelity, 0);
    EXPECT_LE(rp.fidelity, 1);
    EXPECT_LE(rp.fidelity, sqreadout::erf(rp.snr / std::numbers::sqrt2));
  }
}

TEST(Snr, InvariantUnderDeltaThetaShiftByPi) {
  oracle::Gen gen(24);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p = params(gen.uniform(0.5, 4));
    const double t = gen.uniform(0.01, 3), phi = gen.uniform(-pi, pi), xi = gen.uniform(-pi, pi);
    const ProbeState a(5, 0.2, gen.uniform(0, 2), xi);
    // theta_xi -> theta_xi - 2 pi shifts Delta theta by pi.
    const ProbeState b(5, 0.2, a.r(), xi - 2 * pi);
    EXPECT_NEAR(snr(t, a, p, phi), snr(t, b, p, phi), 1e-10);
  }
}

TEST(Snr, StrictlyIncreasingInAlpha) {
  const SystemParams p = params(2);
  double previous = -1.0;
  for (double alpha = 0.0; alpha <= 12.0; alpha += 0.5) {
    const double value = snr(kT3, ProbeState(alpha, 0, 0.74, pi), p);
    EXPECT_GT(value, previous);
    previous = value;
  }
}

TEST(Snr, MatchedPhaseBeatsMismatchInShortTimeRegime) {
  // Sub-microsecond readout with moderate squeezing.
  for (double kappa : {1.0, 2.0}) {
    for (double t : {0.3, 0.6, kT3, kT1us}) {
      for (double r : {0.25, 0.5, 0.74, 1.0}) {
        const SystemParams p = params(kappa);
        const double matched = snr(t, ProbeState(10, 0, r, pi), p);
        for (int k = 1; k < 64; ++k) {
          const double dtheta = -pi / 2 + pi * k / 64.0;
          const ProbeState probe(10, 0, r, 2 * (pi / 2 - dtheta));
          EXPECT_GE(matched, snr(t, probe, p) - 1e-12) << kappa << ' ' << t << ' ' << r << ' ' << dtheta;
        }
      }
    }
  }
}

TEST(Snr, MatchedPhaseNotOptimalForStrongSqueezing) {
  // Once the anti-squeezed B term dominates, tilting the ellipse trades a
  // little A noise for less B noise.
  const SystemParams p = params(2);
  const double matched = snr(kT1us, ProbeState(10, 0, 1.5, pi), p);
  double best = matched;
  for (int k = 1; k < 64; ++k) {
    const double dtheta = -pi / 2 + pi * k / 64.0;
    best = std::max(best, snr(kT1us, ProbeState(10, 0, 1.5, 2 * (pi / 2 - dtheta)), p));
  }
  EXPECT_GT(best, matched + 1e-3);
}

TEST(Fidelity, Examples) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(fidelity(1.0, inf, inf), 1.0);
  EXPECT_EQ(fidelity(1.0, 0.0, 100.0), 0.0);
  const ReadoutPoint fig2 = evaluate_point(kT1us, ProbeState(std::sqrt(30.0), 0, 0.85, pi), params(1));
  EXPECT_NEAR(fig2.fidelity, 0.978690776082406, 1e-12);
  EXPECT_TRUE(fig2.short_time_ok);
  EXPECT_THROW(fidelity(1.0, 2.0, 0.0), ValidationError);
  EXPECT_THROW(fidelity(1.0, 2.0, -1.0), ValidationError);
  EXPECT_FALSE(fidelity_short_time_ok(20.0, 100.0));
}

TEST(OptimalTime, Estimate) {
  EXPECT_NEAR(optimal_time_estimate(0.0, params(2)), std::sqrt(3.0), 1e-15);
  const UnitContext units = UnitContext::from_mhz(0.15);
  EXPECT_NEAR(units.to_physical_time_us(optimal_time_estimate(0.74, params(2))), 0.876822293448594, 1e-12);
  double previous = std::numeric_limits<double>::infinity();
  for (double r = 0; r < 3; r += 0.1) {
    const double t = optimal_time_estimate(r, params(2));
    EXPECT_LT(t, previous);
    previous = t;
  }
}

TEST(OptimalSqueezing, MatchesClosedFormAndGridSearch) {
  const auto r_star = optimal_squeezing(kT3, params(2));
  ASSERT_TRUE(r_star.has_value());
  EXPECT_NEAR(*r_star, 0.743293654250378, 1e-12);

  // The maximizer of SNR over r does not depend on alpha or u.
  for (double u : {0.25, 1.0, 3.0}) {
    for (double alpha : {1.0, 10.0}) {
      double best_r = 0, best = -1;
      for (int i = 0; i <= 30000; ++i) {
        const double r = 3.0 * i / 30000.0;
        const double v = snr(kT3, ProbeState(alpha, 0, r, pi), params(2, u));
        if (v > best) {
          best = v;
          best_r = r;
        }
      }
      EXPECT_NEAR(best_r, *r_star, 1e-4) << u << ' ' << alpha;
    }
  }
}

TEST(OptimalSqueezing, NoInteriorOptimum) {
  // Long readout with kappa = 2 chi: A = g changes sign at t = pi.
  EXPECT_FALSE(optimal_squeezing(3.5, params(2)).has_value());
  EXPECT_THROW(optimal_squeezing(0.0, params(2)), ValidationError);
  // A = B at the first crossing gives r* = 0.
  double lo = 0.5, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    auto [a, b] = signal_coefficients(mid, params(2));
    (a > b ? lo : hi) = mid;
  }
  const auto at_cross = optimal_squeezing(lo, params(2));
  ASSERT_TRUE(at_cross.has_value());
  EXPECT_NEAR(*at_cross, 0.0, 1e-9);
}

TEST(PhaseMatching, Examples) {
  EXPECT_TRUE(phase_matching_residual(0, pi, pi / 2).matched);
  const PhaseMatching off = phase_matching_residual(0, 0, pi / 2);
  EXPECT_FALSE(off.matched);
  EXPECT_NEAR(off.squeezing_residual, pi / 2, 1e-15);
  const PhaseMatching alt = phase_matching_residual(pi / 2, 0, 0);
  EXPECT_TRUE(alt.matched);
  EXPECT_NEAR(alt.combined_residual, 0.0, 1e-15);
  // Integer shifts of either condition stay matched.
  EXPECT_TRUE(phase_matching_residual(3 * pi, 3 * pi, 5 * pi / 2).matched);
}

}  // namespace
}  // namespace sqreadout
