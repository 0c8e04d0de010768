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
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sqreadout/probe_states.hpp"
#include "sqreadout/rng.hpp"

namespace sqreadout {
namespace {

constexpr double pi = std::numbers::pi;

TEST(ProbeState, RejectsNegativeAmplitudes) {
  EXPECT_THROW(ProbeState(-1, 0, 0, 0), ValidationError);
  EXPECT_THROW(ProbeState(1, 0, -0.1, 0), ValidationError);
  EXPECT_THROW(ProbeState(1, NAN, 0, 0), ValidationError);
}

TEST(ProbeState, PhasesReducedToHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(ProbeState(1, -pi, 0, 3 * pi).theta_alpha(), pi);
  EXPECT_DOUBLE_EQ(ProbeState(1, 0, 0, 3 * pi).theta_xi(), pi);
  EXPECT_NEAR(ProbeState(1, 2 * pi + 0.5, 0, 0).theta_alpha(), 0.5, 1e-15);
  EXPECT_NEAR(ProbeState(1, -0.5, 0, 0).theta_alpha(), -0.5, 1e-15);
}

TEST(InputMeans, Displacement) {
  auto m = input_means(ProbeState(10, 0, 0.3, pi));
  EXPECT_NEAR(m.q, 14.142135623730951, 1e-12);
  EXPECT_NEAR(m.p, 0.0, 1e-15);
  m = input_means(ProbeState(0, 1.2, 0.3, 0.4));
  EXPECT_EQ(m.q, 0.0);
  EXPECT_EQ(m.p, 0.0);
  m = input_means(ProbeState(10, pi / 2, 0, 0));
  EXPECT_NEAR(m.q, 0.0, 1e-14);
  EXPECT_NEAR(m.p, 14.142135623730951, 1e-12);
}

TEST(InputCovariance, Examples) {
  const QuadratureStats vac = input_covariance(ProbeState(0, 0, 0, 1.0));
  EXPECT_DOUBLE_EQ(vac.var_q, 0.5);
  EXPECT_DOUBLE_EQ(vac.var_p, 0.5);
  EXPECT_NEAR(vac.cov_qp, 0.0, 1e-16);

  const QuadratureStats sq = input_covariance(ProbeState(1, 0, 0.85, pi));
  EXPECT_NEAR(sq.var_p, std::exp(-1.7) / 2, 1e-14);
  EXPECT_NEAR(sq.var_q, std::exp(1.7) / 2, 1e-13);
  EXPECT_NEAR(sq.cov_qp, 0.0, 1e-15);

  const QuadratureStats diag = input_covariance(ProbeState(1, 0, 0.5, pi / 2));
  EXPECT_NEAR(diag.var_q, 0.5 * std::cosh(1.0), 1e-14);
  EXPECT_NEAR(diag.var_p, 0.771540317407622, 1e-12);
  EXPECT_NEAR(diag.cov_qp, -0.587600596821907, 1e-12);
  EXPECT_NEAR(diag.determinant(), 0.25, 1e-14);
}

TEST(InputCovariance, PurityProperty) {
  oracle::Gen gen(1);
  for (int i = 0; i < 1000; ++i) {
    const double r = gen.uniform(0, 3);
    const QuadratureStats s = input_covariance(ProbeState(1, 0, r, gen.uniform(-pi, pi)));
    // var_q * var_p cancels against cov^2; rounding grows like cosh^2(2r).
    const double scale = std::cosh(2 * r) * std::cosh(2 * r);
    EXPECT_NEAR(s.determinant(), 0.25, r <= 2 ? 1e-12 : 1e-15 * scale) << r;
    EXPECT_GT(s.var_q, 0);
    EXPECT_GT(s.var_p, 0);
  }
}

TEST(RotatedQuadratureVariance, SqueezedAndAntiSqueezedAxes) {
  for (double r : {0.0, 0.3, 0.74, 1.5}) {
    const ProbeState probe(3, 0, r, pi);
    EXPECT_NEAR(rotated_quadrature_variance(probe, pi / 2), std::exp(-2 * r) / 2, 1e-14);
    EXPECT_NEAR(rotated_quadrature_variance(probe, 0.0), std::exp(2 * r) / 2, 1e-12);
  }
  EXPECT_DOUBLE_EQ(rotated_quadrature_variance(ProbeState(3, 0, 0, 1.1), 0.7), 0.5);
}

TEST(RotatedQuadratureVariance, ConsistentWithCovarianceProperty) {
  oracle::Gen gen(2);
  for (int i = 0; i < 1000; ++i) {
    const ProbeState probe(1, 0, gen.uniform(0, 2), gen.uniform(-pi, pi));
    const double phi = gen.uniform(-pi, pi);
    const QuadratureStats s = input_covariance(probe);
    const double c = std::cos(phi), sn = std::sin(phi);
    const double expected = s.var_q * c * c + s.var_p * sn * sn + 2 * s.cov_qp * sn * c;
    EXPECT_NEAR(rotated_quadrature_variance(probe, phi), expected, 1e-12 * std::cosh(2 * probe.r()));
  }
}

TEST(InputCovariance, MonteCarloMomentsMatch) {
  // Sample (Q, P) through a 2x2 Cholesky factor and compare sample moments.
  const ProbeState probe(2, 0.3, 0.6, 0.9);
  const QuadratureStats s = input_covariance(probe);
  const double l11 = std::sqrt(s.var_q), l21 = s.cov_qp / l11, l22 = std::sqrt(s.var_p - l21 * l21);
  NormalStream normal(123);
  const int n = 1'000'000;
  double sq = 0, sp = 0, sqq = 0, spp = 0, sqp = 0;
  for (int i = 0; i < n; ++i) {
    const double z1 = normal.next(), z2 = normal.next();
    const double q = s.mean_q + l11 * z1, p = s.mean_p + l21 * z1 + l22 * z2;
    sq += q;
    sp += p;
    sqq += q * q;
    spp += p * p;
    sqp += q * p;
  }
  const double mq = sq / n, mp = sp / n;
  const double vq = sqq / n - mq * mq, vp = spp / n - mp * mp, cqp = sqp / n - mq * mp;
  EXPECT_NEAR(mq, s.mean_q, 5 * std::sqrt(s.var_q / n));
  EXPECT_NEAR(mp, s.mean_p, 5 * std::sqrt(s.var_p / n));
  EXPECT_NEAR(vq, s.var_q, 5 * s.var_q * std::sqrt(2.0 / n));
  EXPECT_NEAR(vp, s.var_p, 5 * s.var_p * std::sqrt(2.0 / n));
  EXPECT_NEAR(cqp, s.cov_qp, 5 * std::sqrt((s.var_q * s.var_p + s.cov_qp * s.cov_qp) / n));
}

TEST(SqueezedCoherent, DisplacementConversion) {
  const std::complex<double> gamma(1.3, -0.4);
  EXPECT_EQ(displacement_from_squeezed_coherent(gamma, 0.0, 0.8), gamma);

  const double r = 0.74;
  const auto real_case = displacement_from_squeezed_coherent({2.0, 0.0}, r, pi);
  EXPECT_NEAR(real_case.real(), 2.0 * std::exp(r), 1e-13);
  EXPECT_NEAR(real_case.imag(), 0.0, 1e-13);

  const auto imag_case = displacement_from_squeezed_coherent({0.0, 1.5}, r, 0.0);
  EXPECT_NEAR(imag_case.real(), 0.0, 1e-13);
  EXPECT_NEAR(imag_case.imag(), 1.5 * std::exp(r), 1e-13);

  // gamma = alpha e^{-r} reproduces a real displacement alpha at theta_xi = pi.
  const ProbeState probe = probe_from_squeezed_coherent({10.0 * std::exp(-r), 0.0}, r, pi);
  EXPECT_NEAR(probe.alpha(), 10.0, 1e-12);
  EXPECT_NEAR(probe.theta_alpha(), 0.0, 1e-15);
}

TEST(MeanPhotonNumber, Examples) {
  EXPECT_NEAR(mean_photon_number(ProbeState(std::sqrt(30.0), 0, 0, 0)), 30.0, 1e-12);
  EXPECT_EQ(mean_photon_number(ProbeState(0, 0, 0, 0)), 0.0);
  EXPECT_NEAR(mean_photon_number(ProbeState(0, 0, 1.0, 0)), 1.381097845541816, 1e-13);
}

}  // namespace
}  // namespace sqreadout
