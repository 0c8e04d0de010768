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

#ifndef SQREADOUT_ERF_HPP
#define SQREADOUT_ERF_HPP

#include <cmath>
#include <numbers>

#include "sqreadout/errors.hpp"

namespace sqreadout {

namespace detail {

// erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!
// All terms are positive, so there is no cancellation for |x| < 2.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) {
      break;
    }
  }
  return std::numbers::inv_sqrtpi * 2.0 * std::exp(-x2) * sum;
}

// erfc(x) for x >= 2 from the continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
inline double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    d = (d == 0.0) ? tiny : d;
    c = x + a / c;
    c = (c == 0.0) ? tiny : c;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return std::numbers::inv_sqrtpi * std::exp(-x * x) / f;
}

}  // namespace detail

/// Error function, accurate to ~1e-15 absolute. Series below |x| = 2,
/// continued fraction for the tail.
inline double erf(double x) {
  detail::require(std::isfinite(x), "erf argument must be finite");
  const double ax = std::abs(x);
  const double value = ax < 2.0 ? detail::erf_series(ax) : 1.0 - detail::erfc_continued_fraction(ax);
  return x < 0 ? -value : value;
}

}  // namespace sqreadout

#endif  // SQREADOUT_ERF_HPP
