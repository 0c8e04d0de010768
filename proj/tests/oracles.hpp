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

// Independent reference computations used only by tests. Nothing here may
// call into the library's closed forms.

#ifndef SQREADOUT_TESTS_ORACLES_HPP
#define SQREADOUT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace oracle {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)> &f, double a, double fa, double b, double fb, double m,
                       double fm, double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance eps.
inline double integrate(const std::function<double(double)> &f, double a, double b, double eps = 1e-15) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adaptive(f, a, fa, b, fb, m, fm, whole, eps, 50);
}

struct Coefficients {
  double f, g, big_f, big_g, a, b;
};

/// f, g by direct evaluation; F, G, A, B by quadrature of their defining
/// integrals (A and B through int_0^t (t - s) f(s) ds).
inline Coefficients coefficients(double t, double kappa, double chi) {
  auto f = [&](double s) { return std::exp(-0.5 * kappa * s) * std::cos(chi * s); };
  auto g = [&](double s) { return std::exp(-0.5 * kappa * s) * std::sin(chi * s); };
  const double scale = 1e-16 * std::max(1.0, t);
  Coefficients c;
  c.f = f(t);
  c.g = g(t);
  c.big_f = integrate(f, 0.0, t, scale);
  c.big_g = integrate(g, 0.0, t, scale);
  c.a = t - kappa * integrate([&](double s) { return (t - s) * f(s); }, 0.0, t, scale * t);
  c.b = kappa * integrate([&](double s) { return (t - s) * g(s); }, 0.0, t, scale * t);
  return c;
}

/// Maclaurin series of erf summed in long double until terms vanish.
inline long double erf_taylor(long double x) {
  long double term = x, sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const long double contribution = term / (2 * n + 1);
    sum += contribution;
    if (std::fabs(contribution) < 1e-22L * std::fabs(sum)) break;
  }
  return sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L);
}

/// Integrated-record variance from the lab-frame input covariance:
/// M = A X_phi + sigma B X_{phi+pi/2} plus the resonator vacuum term.
inline double lab_frame_variance(double a, double b, double big_f, double big_g, double kappa, double u, double var_q,
                                 double var_p, double cov_qp, double phi, int sigma) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double var_along = var_q * c * c + var_p * s * s + 2 * cov_qp * s * c;
  const double var_across = var_q * s * s + var_p * c * c - 2 * cov_qp * s * c;
  const double cov_cross = -var_q * s * c + var_p * s * c + cov_qp * (c * c - s * s);
  return a * a * var_along + b * b * var_across + 2.0 * sigma * a * b * cov_cross +
         u * 0.5 * kappa * (big_f * big_f + big_g * big_g);
}

/// Deterministic generator for property-style tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oracle

#endif  // SQREADOUT_TESTS_ORACLES_HPP
