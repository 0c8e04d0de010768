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

// sqreadout: command-line front end for the dispersive readout model.
//
//   sqreadout --config run.cfg snr
//   sqreadout --config run.cfg --out shots.csv shots
//   sqreadout figures fig3 --out fig3.csv
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqreadout.hpp"

namespace {

using namespace sqreadout;

struct GlobalOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_shots;
  std::optional<double> vacuum_weight;
  bool u_literal = false;
};

RunConfig load_config(const GlobalOptions &opts, bool required) {
  RunConfig cfg;
  if (opts.config_path.empty()) {
    detail::require(!required, "--config is required for this subcommand");
  } else {
    std::ifstream in(opts.config_path);
    detail::require(static_cast<bool>(in), "cannot read config file '" + opts.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    cfg = parse_config(text.str());
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.n_shots) {
    detail::require(*opts.n_shots >= 1, "--n-shots must be at least 1");
    cfg.n_shots = *opts.n_shots;
  }
  if (opts.vacuum_weight) {
    detail::require(*opts.vacuum_weight > 0, "--vacuum-weight must be positive");
    cfg.vacuum_weight = *opts.vacuum_weight;
  }
  if (opts.u_literal) cfg.vacuum_weight = 1.0;
  if (!opts.config_path.empty()) cfg.validate();
  return cfg;
}

void print_summary(const Metadata &lines) {
  for (const auto &[key, value] : lines) {
    std::cout << key << " = " << value << '\n';
  }
}

/// Writes a table to --out, or to stdout when no path was given.
void emit_table(const GlobalOptions &opts, const std::function<void(std::ostream &)> &write) {
  if (opts.out_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  detail::require(static_cast<bool>(out), "cannot open output file '" + opts.out_path + "'");
  write(out);
  detail::require(static_cast<bool>(out), "failed writing '" + opts.out_path + "'");
}

std::string optional_double(std::optional<double> v) { return v ? format_double(*v) : std::string("none"); }

int run_snr(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  const OperatingPoint op = cfg.operating_point();
  const double t = cfg.readout_time();
  const ReadoutPoint rp = evaluate_point(t, op.probe, op.params, op.lo_phase, op.t1);
  const PhaseMatching pm = phase_matching_residual(op.probe.theta_alpha(), op.probe.theta_xi(), op.lo_phase);
  print_summary({{"t_us", format_double(*cfg.t_us)},
                 {"t_internal", format_double(t)},
                 {"snr", format_double(rp.snr)},
                 {"contrast", format_double(rp.contrast)},
                 {"mean_plus", format_double(rp.mean_plus)},
                 {"mean_minus", format_double(rp.mean_minus)},
                 {"variance_plus", format_double(rp.variance_plus)},
                 {"variance_minus", format_double(rp.variance_minus)},
                 {"delta_theta", format_double(op.delta_theta())},
                 {"phase_matched", pm.matched ? "true" : "false"},
                 {"vacuum_weight", format_double(cfg.vacuum_weight)}});
  return 0;
}

int run_fidelity(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  const OperatingPoint op = cfg.operating_point();
  const double t = cfg.readout_time();
  const ReadoutPoint rp = evaluate_point(t, op.probe, op.params, op.lo_phase, op.t1);
  if (!rp.short_time_ok) {
    std::cerr << "warning: t exceeds T1/10; the decay factor is no longer a small correction\n";
  }
  const UnitContext units = cfg.units();
  print_summary({{"t_us", format_double(*cfg.t_us)},
                 {"snr", format_double(rp.snr)},
                 {"fidelity", format_double(rp.fidelity)},
                 {"t1_used_ms", format_double(units.to_physical_time_us(op.t1) * 1e-3)},
                 {"include_backaction", cfg.include_backaction ? "true" : "false"},
                 {"short_time_ok", rp.short_time_ok ? "true" : "false"},
                 {"vacuum_weight", format_double(cfg.vacuum_weight)}});
  return 0;
}

int run_sweep_command(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  detail::require(cfg.sweep_variable.has_value(), "missing required key 'sweep_variable'");
  detail::require(cfg.sweep_lo.has_value(), "missing required key 'sweep_lo'");
  detail::require(cfg.sweep_hi.has_value(), "missing required key 'sweep_hi'");
  const UnitContext units = cfg.units();
  SweepSpec spec;
  spec.variable = *cfg.sweep_variable;
  spec.metric = cfg.sweep_metric;
  spec.points = cfg.sweep_points;
  spec.find_peak = cfg.sweep_peak;
  spec.fixed = cfg.operating_point();
  if (spec.variable == SweepVariable::kTime) {
    // Time ranges are given in microseconds.
    detail::require(*cfg.sweep_lo >= 0, "sweep_lo must be non-negative for a time sweep");
    spec.lo = units.to_internal_time(*cfg.sweep_lo);
    spec.hi = units.to_internal_time(*cfg.sweep_hi);
  } else {
    detail::require(cfg.t_us.has_value(), "missing required key 't_us'");
    spec.lo = *cfg.sweep_lo;
    spec.hi = *cfg.sweep_hi;
  }
  const SweepResult result = run_sweep(spec, cfg.threads);
  emit_table(opts, [&](std::ostream &os) { write_sweep_csv(os, result, units, cfg.snapshot()); });
  if (!opts.out_path.empty()) {
    std::size_t skipped = 0;
    for (const auto &row : result.rows) skipped += row.valid ? 0 : 1;
    Metadata summary = {{"rows", std::to_string(result.rows.size())}, {"skipped", std::to_string(skipped)}};
    if (result.peak) {
      summary.emplace_back("peak_location", format_double(result.peak->location));
      summary.emplace_back("peak_value", format_double(result.peak->value));
    }
    print_summary(summary);
  }
  return 0;
}

int run_shots(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  const OperatingPoint op = cfg.operating_point();
  const double t = cfg.readout_time();
  const ShotBatch batch = sample_shots(cfg.n_shots, t, op.probe, op.params, op.lo_phase, cfg.seed, cfg.threads);
  const ClassificationResult cls = classify(batch, cfg.threshold_policy);
  const ReadoutPoint rp = evaluate_point(t, op.probe, op.params, op.lo_phase, op.t1);
  emit_table(opts, [&](std::ostream &os) { write_shots_csv(os, batch, cfg.snapshot()); });
  if (!opts.out_path.empty()) {
    print_summary({{"n_shots", std::to_string(batch.n)},
                   {"seed", std::to_string(batch.seed)},
                   {"generator_id", batch.generator_id},
                   {"threshold", format_double(cls.threshold)},
                   {"error_plus", format_double(cls.error_plus)},
                   {"error_minus", format_double(cls.error_minus)},
                   {"empirical_snr", format_double(cls.empirical_snr)},
                   {"analytic_snr", format_double(rp.snr)},
                   {"empirical_fidelity", format_double(empirical_fidelity(cls, t, op.t1))},
                   {"analytic_fidelity", format_double(rp.fidelity)}});
  }
  return 0;
}

int run_backaction(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  detail::require(cfg.gs_over_delta.has_value(), "backaction needs key 'gs_over_delta' (and optionally 'delta_over_chi')");
  const SystemParams params = cfg.system_params();
  const BackactionReport report = backaction_report(cfg.probe(), params, cfg.nondemolition_ratio);
  const UnitContext units = cfg.units();
  if (!report.nondemolition_ok) {
    std::cerr << "warning: mean photon number is not small compared with the critical photon number\n";
  }
  print_summary({{"gamma_purcell_over_chi", format_double(report.gamma_purcell)},
                 {"t1_induced_ms", format_double(units.to_physical_time_us(report.t1_induced) * 1e-3)},
                 {"t1_total_ms", format_double(units.to_physical_time_us(total_t1(params, cfg.r)) * 1e-3)},
                 {"t2_penalty_factor", format_double(report.t2_penalty_factor)},
                 {"n_critical", format_double(report.n_critical)},
                 {"mean_photons", format_double(mean_photon_number(cfg.probe()))},
                 {"photon_ratio", format_double(report.photon_ratio)},
                 {"nondemolition_ok", report.nondemolition_ok ? "true" : "false"}});
  return 0;
}

int run_optimize(const GlobalOptions &opts) {
  const RunConfig cfg = load_config(opts, true);
  const UnitContext units = cfg.units();
  OperatingPoint op = cfg.operating_point();
  Metadata summary;
  const double t_est = optimal_time_estimate(cfg.r, op.params);
  summary.emplace_back("t_estimate_us", format_double(units.to_physical_time_us(t_est)));

  const double t_lo = 0.05 * t_est, t_hi = 3.0 * t_est;
  const PeakResult t_peak = find_peak(Metric::kSnr, SweepVariable::kTime, t_lo, t_hi, op);
  summary.emplace_back("snr_peak_t_us", format_double(units.to_physical_time_us(t_peak.location)));
  summary.emplace_back("snr_peak_value", format_double(t_peak.value));
  summary.emplace_back("snr_peak_at_window_edge",
                       (t_peak.location - t_lo < 1e-6 * t_hi || t_hi - t_peak.location < 1e-6 * t_hi) ? "true"
                                                                                                       : "false");
  if (cfg.t_us) {
    const double t = cfg.readout_time();
    summary.emplace_back("t_us", format_double(*cfg.t_us));
    summary.emplace_back("r_star_analytic", optional_double(optimal_squeezing(t, op.params)));
    const PeakResult r_peak = find_peak(Metric::kSnr, SweepVariable::kSqueezing, 0.0, 3.0, op);
    summary.emplace_back("r_star_search", format_double(r_peak.location));
    summary.emplace_back("snr_at_r_star", format_double(r_peak.value));
    const OperatingPoint best = with_variable(op, SweepVariable::kSqueezing, r_peak.location);
    summary.emplace_back("fidelity_at_r_star", format_double(evaluate_metric(best, Metric::kFidelity)));
  }
  print_summary(summary);
  return 0;
}

int run_figures(const GlobalOptions &opts, const std::string &which) {
  const RunConfig cfg = load_config(opts, false);
  Metadata meta = {{"figure", which}, {"vacuum_weight", format_double(cfg.vacuum_weight)}};
  if (which == "fig2") {
    std::vector<Fig2Row> rows = reproduce_figure2(Fig2Panel::kAB, cfg.fig2_r_values, cfg.vacuum_weight, cfg.threads);
    const auto cd = reproduce_figure2(Fig2Panel::kCD, cfg.fig2_r_values, cfg.vacuum_weight, cfg.threads);
    rows.insert(rows.end(), cd.begin(), cd.end());
    std::string rs;
    for (double r : cfg.fig2_r_values) rs += (rs.empty() ? "" : ",") + format_double(r);
    meta.emplace_back("r_values", rs);
    emit_table(opts, [&](std::ostream &os) { write_fig2_csv(os, rows, meta); });
  } else {
    const Fig3Tables tables = reproduce_figure3(cfg.vacuum_weight, cfg.threads);
    emit_table(opts, [&](std::ostream &os) { write_fig3_csv(os, tables, meta); });
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Dispersive spin-qubit readout with displaced squeezed vacuum probes"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "key = value configuration file");
  app.add_option("--out", opts.out_path, "CSV output path (default: stdout)");
  app.add_option("--seed", opts.seed, "override seed");
  app.add_option("--n-shots", opts.n_shots, "override n_shots");
  auto *vw = app.add_option("--vacuum-weight", opts.vacuum_weight, "override vacuum_weight");
  app.add_flag("--u-literal", opts.u_literal, "use vacuum_weight = 1")->excludes(vw);

  std::string figure;
  auto *snr_cmd = app.add_subcommand("snr", "analytic SNR at t_us");
  auto *fid_cmd = app.add_subcommand("fidelity", "analytic single-shot fidelity at t_us");
  auto *sweep_cmd = app.add_subcommand("sweep", "1-D parameter sweep to CSV");
  auto *shots_cmd = app.add_subcommand("shots", "Monte Carlo single-shot outcomes to CSV");
  auto *back_cmd = app.add_subcommand("backaction", "probe-induced relaxation figures of merit");
  auto *opt_cmd = app.add_subcommand("optimize", "optimal squeezing and readout time");
  auto *fig_cmd = app.add_subcommand("figures", "regenerate the fig2/fig3 tables");
  fig_cmd->add_option("which", figure, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*snr_cmd) return run_snr(opts);
    if (*fid_cmd) return run_fidelity(opts);
    if (*sweep_cmd) return run_sweep_command(opts);
    if (*shots_cmd) return run_shots(opts);
    if (*back_cmd) return run_backaction(opts);
    if (*opt_cmd) return run_optimize(opts);
    if (*fig_cmd) return run_figures(opts, figure);
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
