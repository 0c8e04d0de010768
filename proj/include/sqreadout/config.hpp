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

#ifndef SQREADOUT_CONFIG_HPP
#define SQREADOUT_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqreadout/backaction.hpp"
#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/probe_states.hpp"
#include "sqreadout/readout_metrics.hpp"
#include "sqreadout/shot_simulator.hpp"
#include "sqreadout/sweep_engine.hpp"

namespace sqreadout {

/// Shortest round-trip decimal representation.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline std::string_view to_string(ThresholdPolicy p) {
  switch (p) {
    case ThresholdPolicy::kSnrWeighted: return "snr_weighted";
    case ThresholdPolicy::kMidpoint: return "midpoint";
    case ThresholdPolicy::kLikelihoodRatio: return "likelihood_ratio";
  }
  return "?";
}

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultShots = 100000;

/// Parsed run configuration. Physical quantities are kept in laboratory units
/// as written in the file; system_params()/probe()/time() convert.
struct RunConfig {
  double chi_over_2pi_mhz = 0.0;
  double kappa_over_chi = 0.0;
  double t1_ms = 0.0;
  double alpha = 0.0;
  double theta_alpha = 0.0;
  double r = 0.0;
  double theta_xi = 0.0;
  double lo_phase = kPhaseQuadrature;
  double vacuum_weight = 0.25;
  double delta_c = 0.0;
  std::optional<double> gs_over_delta;
  double delta_over_chi = 1.0;
  std::optional<double> t_us;
  std::uint64_t seed = kDefaultSeed;
  std::size_t n_shots = kDefaultShots;
  unsigned threads = 0;
  ThresholdPolicy threshold_policy = ThresholdPolicy::kSnrWeighted;
  double nondemolition_ratio = kDefaultNondemolitionRatio;
  bool include_backaction = false;

  std::optional<SweepVariable> sweep_variable;
  std::optional<double> sweep_lo;
  std::optional<double> sweep_hi;
  std::size_t sweep_points = kFigureGridPoints;
  Metric sweep_metric = Metric::kSnr;
  bool sweep_peak = false;
  std::vector<double> fig2_r_values = default_fig2_squeezings();

  UnitContext units() const { return UnitContext::from_mhz(chi_over_2pi_mhz); }

  SystemParams system_params() const {
    SystemParams p = from_experimental(chi_over_2pi_mhz, kappa_over_chi, t1_ms, vacuum_weight);
    if (gs_over_delta) {
      p.coupling = SpinCoupling{*gs_over_delta * delta_over_chi, delta_over_chi};
    }
    p.validate();
    return p;
  }

  ProbeState probe() const { return {alpha, theta_alpha, r, theta_xi}; }

  double readout_time() const {
    detail::require(t_us.has_value(), "missing required key 't_us'");
    return units().to_internal_time(*t_us);
  }

  /// T1 used in the fidelity decay factor.
  double fidelity_t1() const {
    const SystemParams p = system_params();
    return include_backaction ? total_t1(p, r) : p.t1_intrinsic;
  }

  OperatingPoint operating_point() const {
    OperatingPoint op;
    op.params = system_params();
    op.probe = probe();
    op.lo_phase = lo_phase;
    op.t = t_us ? readout_time() : 0.0;
    op.t1 = fidelity_t1();
    return op;
  }

  void validate() const {
    detail::require(delta_c == 0.0, "delta_c: only zero resonator detuning is supported");
    detail::require(n_shots >= 1, "n_shots must be at least 1");
    detail::require(nondemolition_ratio > 0, "nondemolition_ratio must be positive");
    detail::require(!t_us || *t_us >= 0, "t_us must be non-negative");
    if (gs_over_delta) {
      detail::require(*gs_over_delta > 0, "gs_over_delta must be positive");
      detail::require(delta_over_chi != 0, "delta_over_chi must be nonzero");
    }
    system_params();
    probe();
  }

  /// Canonical key = value lines describing the resolved configuration.
  std::vector<std::pair<std::string, std::string>> snapshot() const {
    std::vector<std::pair<std::string, std::string>> s = {
        {"chi_over_2pi_mhz", format_double(chi_over_2pi_mhz)},
        {"kappa_over_chi", format_double(kappa_over_chi)},
        {"t1_ms", format_double(t1_ms)},
        {"alpha", format_double(alpha)},
        {"theta_alpha_rad", format_double(theta_alpha)},
        {"r", format_double(r)},
        {"theta_xi_rad", format_double(theta_xi)},
        {"lo_phase_rad", format_double(lo_phase)},
        {"vacuum_weight", format_double(vacuum_weight)},
        {"delta_c", format_double(delta_c)},
    };
    if (gs_over_delta) {
      s.emplace_back("gs_over_delta", format_double(*gs_over_delta));
      s.emplace_back("delta_over_chi", format_double(delta_over_chi));
    }
    if (t_us) {
      s.emplace_back("t_us", format_double(*t_us));
    }
    s.emplace_back("seed", std::to_string(seed));
    s.emplace_back("n_shots", std::to_string(n_shots));
    s.emplace_back("threshold_policy", std::string(to_string(threshold_policy)));
    s.emplace_back("include_backaction", include_backaction ? "true" : "false");
    return s;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

/// Number, or [-][k*]pi[/d] for convenience.
inline std::optional<double> parse_angle(std::string_view s) {
  if (auto v = parse_number(s)) return v;
  double sign = 1.0;
  if (!s.empty() && s.front() == '-') {
    sign = -1.0;
    s.remove_prefix(1);
  }
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return std::nullopt;
  double factor = 1.0;
  if (pi_pos > 0) {
    std::string_view head = s.substr(0, pi_pos);
    if (head.back() != '*') return std::nullopt;
    auto k = parse_number(head.substr(0, head.size() - 1));
    if (!k) return std::nullopt;
    factor = *k;
  }
  std::string_view tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    auto d = parse_number(tail.substr(1));
    if (!d || *d == 0) return std::nullopt;
    factor /= *d;
  }
  return sign * factor * std::numbers::pi;
}

inline std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

inline std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

}  // namespace detail

/// Parses flat `key = value` text with '#' comments. Unknown or duplicate
/// keys, malformed values and missing physics keys are errors naming the
/// offending line or key.
inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(where + "expected 'key = value'");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ValidationError(where + "duplicate key '" + key + "'");
    }

    auto bad = [&](const char *what) {
      return ValidationError(where + key + ": expected " + what + ", got '" + std::string(value) + "'");
    };
    auto number = [&]() {
      auto v = detail::parse_number(value);
      if (!v) throw bad("a number");
      return *v;
    };
    auto positive = [&]() {
      const double v = number();
      if (!(v > 0)) throw ValidationError(where + key + " must be positive");
      return v;
    };
    auto non_negative = [&]() {
      const double v = number();
      if (!(v >= 0)) throw ValidationError(where + key + " must be non-negative");
      return v;
    };
    auto angle = [&]() {
      auto v = detail::parse_angle(value);
      if (!v) throw bad("an angle in radians (number or k*pi/d; degrees are not accepted)");
      return *v;
    };
    auto integer = [&]() {
      auto v = detail::parse_unsigned(value);
      if (!v) throw bad("a non-negative integer");
      return *v;
    };
    auto boolean = [&]() {
      auto v = detail::parse_bool(value);
      if (!v) throw bad("true or false");
      return *v;
    };

    if (key == "chi_over_2pi_mhz") cfg.chi_over_2pi_mhz = positive();
    else if (key == "kappa_over_chi") cfg.kappa_over_chi = positive();
    else if (key == "t1_ms") cfg.t1_ms = positive();
    else if (key == "alpha") cfg.alpha = non_negative();
    else if (key == "theta_alpha_rad") cfg.theta_alpha = angle();
    else if (key == "r") cfg.r = non_negative();
    else if (key == "theta_xi_rad") cfg.theta_xi = angle();
    else if (key == "lo_phase_rad") cfg.lo_phase = angle();
    else if (key == "vacuum_weight") cfg.vacuum_weight = positive();
    else if (key == "delta_c") {
      cfg.delta_c = number();
      if (cfg.delta_c != 0.0) throw ValidationError(where + "delta_c must be 0 (nonzero resonator detuning is not modelled)");
    }
    else if (key == "gs_over_delta") cfg.gs_over_delta = positive();
    else if (key == "delta_over_chi") {
      cfg.delta_over_chi = number();
      if (cfg.delta_over_chi == 0) throw ValidationError(where + "delta_over_chi must be nonzero");
    }
    else if (key == "t_us") cfg.t_us = non_negative();
    else if (key == "seed") cfg.seed = integer();
    else if (key == "n_shots") {
      cfg.n_shots = integer();
      if (cfg.n_shots == 0) throw ValidationError(where + "n_shots must be at least 1");
    }
    else if (key == "threads") cfg.threads = static_cast<unsigned>(integer());
    else if (key == "threshold_policy") {
      if (value == "snr_weighted") cfg.threshold_policy = ThresholdPolicy::kSnrWeighted;
      else if (value == "midpoint") cfg.threshold_policy = ThresholdPolicy::kMidpoint;
      else if (value == "likelihood_ratio") cfg.threshold_policy = ThresholdPolicy::kLikelihoodRatio;
      else throw bad("snr_weighted, midpoint or likelihood_ratio");
    }
    else if (key == "nondemolition_ratio") cfg.nondemolition_ratio = positive();
    else if (key == "include_backaction") cfg.include_backaction = boolean();
    else if (key == "sweep_variable") {
      try {
        cfg.sweep_variable = parse_sweep_variable(value);
      } catch (const ValidationError &e) {
        throw ValidationError(where + e.what());
      }
    }
    else if (key == "sweep_lo") cfg.sweep_lo = number();
    else if (key == "sweep_hi") cfg.sweep_hi = number();
    else if (key == "sweep_points") {
      cfg.sweep_points = integer();
      if (cfg.sweep_points < 2) throw ValidationError(where + "sweep_points must be at least 2");
    }
    else if (key == "sweep_metric") {
      try {
        cfg.sweep_metric = parse_metric(value);
      } catch (const ValidationError &e) {
        throw ValidationError(where + e.what());
      }
    }
    else if (key == "sweep_peak") cfg.sweep_peak = boolean();
    else if (key == "fig2_r_values") {
      cfg.fig2_r_values.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = detail::trim(rest.substr(0, comma));
        auto v = detail::parse_number(item);
        if (!v || *v < 0) throw bad("a comma-separated list of non-negative numbers");
        cfg.fig2_r_values.push_back(*v);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
      if (cfg.fig2_r_values.empty()) throw bad("at least one squeezing value");
    }
    else {
      throw ValidationError(where + "unknown key '" + key + "'");
    }
  }

  for (const char *required : {"chi_over_2pi_mhz", "kappa_over_chi", "t1_ms", "alpha", "r", "theta_xi_rad"}) {
    if (!seen.count(required)) {
      throw ValidationError(std::string("missing required key '") + required + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace sqreadout

#endif  // SQREADOUT_CONFIG_HPP
