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

#ifndef SQREADOUT_SHOT_SIMULATOR_HPP
#define SQREADOUT_SHOT_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sqreadout/cavity_dynamics.hpp"
#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/parallel.hpp"
#include "sqreadout/probe_states.hpp"
#include "sqreadout/readout_metrics.hpp"
#include "sqreadout/rng.hpp"

namespace sqreadout {

/// Shots per sub-stream. Part of the reproducibility contract together with
/// kGeneratorId.
inline constexpr std::size_t kShotsPerStream = 4096;

/// Single-shot integrated homodyne outcomes for both qubit states.
struct ShotBatch {
  std::vector<double> outcomes_plus;
  std::vector<double> outcomes_minus;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string generator_id;
  double t = 0.0;
  double lo_phase = kPhaseQuadrature;
  ProbeState probe;
  SystemParams params;
};

enum class ThresholdPolicy {
  /// Threshold where both states sit the same number of standard deviations
  /// away, (mu+ s- + mu- s+)/(s+ + s-). Equals the midpoint for equal
  /// variances and makes 1 - e+ - e- converge to erf(SNR/sqrt2) in general.
  kSnrWeighted,
  /// (mu+ + mu-)/2.
  kMidpoint,
  /// Per-shot Gaussian likelihood ratio with the analytic moments.
  kLikelihoodRatio,
};

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

struct ClassificationResult {
  double threshold = 0.0;
  double error_plus = 0.0;
  double error_minus = 0.0;
  SampleMoments plus;
  SampleMoments minus;
  double empirical_snr = 0.0;
  double empirical_fidelity = 0.0;
};

inline SampleMoments sample_moments(const std::vector<double> &xs) {
  SampleMoments m;
  if (xs.empty()) {
    return m;
  }
  // Two-pass for stability; n is small enough that this is cheap.
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  m.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - m.mean) * (x - m.mean);
  }
  m.variance = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
  return m;
}

namespace detail {

struct Cholesky2 {
  double l11, l21, l22;
};

inline Cholesky2 cholesky(const QuadratureStats &s) {
  const double l11 = std::sqrt(s.var_q);
  const double l21 = l11 > 0 ? s.cov_qp / l11 : 0.0;
  const double rest = s.var_p - l21 * l21;
  if (!(s.var_q > 0) || !(rest > 0) || !std::isfinite(rest)) {
    throw NumericalError("probe covariance is not positive definite");
  }
  return {l11, l21, std::sqrt(rest)};
}

}  // namespace detail

/// Draws n shots per qubit state. Each shot samples (Q_in, P_in) from the
/// probe's Gaussian and the initial resonator quadratures as independent
/// zero-mean normals of variance u/2, then forms
///   M = cos(phi) int Q_out + sin(phi) int P_out
/// through the integrated output map. Outcomes depend only on (seed, n,
/// parameters), never on `threads`.
inline ShotBatch sample_shots(std::size_t n, double t, const ProbeState &probe, const SystemParams &params,
                              double phi, std::uint64_t seed, unsigned threads = 0) {
  detail::require(n >= 1, "n_shots must be at least 1");
  detail::require(std::isfinite(t) && t > 0, "shots need t > 0");
  detail::require(std::isfinite(phi), "LO phase must be finite");
  params.validate();

  const QuadratureStats in = input_covariance(probe);
  const detail::Cholesky2 chol = detail::cholesky(in);
  const double vacuum_sd = std::sqrt(0.5 * params.vacuum_weight);
  const CoefficientSet coefs = coefficients(t, params);
  const IntegratedOutputMap maps[2] = {integrated_output_map(coefs, params, +1),
                                       integrated_output_map(coefs, params, -1)};
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);

  ShotBatch batch;
  batch.n = n;
  batch.seed = seed;
  batch.generator_id = std::string(kGeneratorId);
  batch.t = t;
  batch.lo_phase = phi;
  batch.probe = probe;
  batch.params = params;
  batch.outcomes_plus.resize(n);
  batch.outcomes_minus.resize(n);

  const std::size_t streams = (n + kShotsPerStream - 1) / kShotsPerStream;
  parallel_for(streams, threads, [&](std::size_t stream) {
    NormalStream normal(substream_seed(seed, stream));
    const std::size_t begin = stream * kShotsPerStream;
    const std::size_t end = std::min(n, begin + kShotsPerStream);
    for (std::size_t i = begin; i < end; ++i) {
      for (int k = 0; k < 2; ++k) {
        const double z1 = normal.next();
        const double z2 = normal.next();
        const double q_in = in.mean_q + chol.l11 * z1;
        const double p_in = in.mean_p + chol.l21 * z1 + chol.l22 * z2;
        const double q0 = vacuum_sd * normal.next();
        const double p0 = vacuum_sd * normal.next();
        const Mat2 &mi = maps[k].input;
        const Mat2 &mv = maps[k].vacuum;
        const double iq = mi.qq * q_in + mi.qp * p_in + mv.qq * q0 + mv.qp * p0;
        const double ip = mi.pq * q_in + mi.pp * p_in + mv.pq * q0 + mv.pp * p0;
        (k == 0 ? batch.outcomes_plus : batch.outcomes_minus)[i] = cphi * iq + sphi * ip;
      }
    }
  });
  return batch;
}

/// (1 - e+ - e-) exp(-t / 2 T1).
inline double empirical_fidelity(const ClassificationResult &result, double t, double t1) {
  detail::require(t1 > 0 && !std::isnan(t1), "T1 must be positive");
  const double decay = std::isinf(t1) ? 1.0 : std::exp(-t / (2.0 * t1));
  return (1.0 - result.error_plus - result.error_minus) * decay;
}

/// Labels each outcome by the side of the threshold its state's analytic
/// mean lies on, and reports error fractions and sample-moment SNR.
inline ClassificationResult classify(const ShotBatch &batch, ThresholdPolicy policy = ThresholdPolicy::kSnrWeighted) {
  detail::require(batch.n > 0 && batch.outcomes_plus.size() == batch.n && batch.outcomes_minus.size() == batch.n,
                  "batch is empty or inconsistent");
  ClassificationResult result;
  result.plus = sample_moments(batch.outcomes_plus);
  result.minus = sample_moments(batch.outcomes_minus);
  if (!(result.plus.variance > 0) && !(result.minus.variance > 0)) {
    throw NumericalError("degenerate shot batch: zero spread in both states");
  }

  const ReadoutPoint analytic = evaluate_point(batch.t, batch.probe, batch.params, batch.lo_phase);
  const double mu_p = analytic.mean_plus;
  const double mu_m = analytic.mean_minus;
  const double sd_p = std::sqrt(analytic.variance_plus);
  const double sd_m = std::sqrt(analytic.variance_minus);
  const bool plus_above = mu_p >= mu_m;

  switch (policy) {
    case ThresholdPolicy::kSnrWeighted:
      result.threshold = (mu_p * sd_m + mu_m * sd_p) / (sd_p + sd_m);
      break;
    case ThresholdPolicy::kMidpoint:
    case ThresholdPolicy::kLikelihoodRatio:
      result.threshold = 0.5 * (mu_p + mu_m);
      break;
  }

  auto log_likelihood = [](double x, double mu, double sd) {
    const double z = (x - mu) / sd;
    return -0.5 * z * z - std::log(sd);
  };
  auto labelled_plus = [&](double x) {
    if (policy == ThresholdPolicy::kLikelihoodRatio) {
      return log_likelihood(x, mu_p, sd_p) >= log_likelihood(x, mu_m, sd_m);
    }
    return plus_above ? x > result.threshold : x < result.threshold;
  };

  std::size_t wrong_plus = 0;
  std::size_t wrong_minus = 0;
  for (double x : batch.outcomes_plus) {
    wrong_plus += labelled_plus(x) ? 0 : 1;
  }
  for (double x : batch.outcomes_minus) {
    wrong_minus += labelled_plus(x) ? 1 : 0;
  }
  const double n = static_cast<double>(batch.n);
  result.error_plus = static_cast<double>(wrong_plus) / n;
  result.error_minus = static_cast<double>(wrong_minus) / n;
  result.empirical_snr = std::abs(result.plus.mean - result.minus.mean) /
                         (std::sqrt(result.plus.variance) + std::sqrt(result.minus.variance));
  result.empirical_fidelity = empirical_fidelity(result, batch.t, batch.params.t1_intrinsic);
  return result;
}

}  // namespace sqreadout

#endif  // SQREADOUT_SHOT_SIMULATOR_HPP
