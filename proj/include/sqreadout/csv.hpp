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

#ifndef SQREADOUT_CSV_HPP
#define SQREADOUT_CSV_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sqreadout/config.hpp"
#include "sqreadout/shot_simulator.hpp"
#include "sqreadout/sweep_engine.hpp"

// CSV emitters. Comma separated, '.' decimal point, shortest round-trip
// numbers, '#'-prefixed metadata lines ahead of the header row.

namespace sqreadout {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream &os, const Metadata &meta) {
  for (const auto &[key, value] : meta) {
    os << "# " << key << " = " << value << '\n';
  }
}

inline void write_sweep_csv(std::ostream &os, const SweepResult &result, const UnitContext &units,
                            const Metadata &meta) {
  Metadata full = meta;
  full.emplace_back("sweep_variable", std::string(to_string(result.spec.variable)));
  full.emplace_back("sweep_metric", std::string(to_string(result.spec.metric)));
  full.emplace_back("sweep_lo", format_double(result.spec.lo));
  full.emplace_back("sweep_hi", format_double(result.spec.hi));
  full.emplace_back("sweep_points", std::to_string(result.spec.points));
  if (result.peak) {
    full.emplace_back("peak_location", format_double(result.peak->location));
    full.emplace_back("peak_value", format_double(result.peak->value));
  }
  write_metadata(os, full);
  os << to_string(result.spec.variable) << ',' << to_string(result.spec.metric)
     << ",valid,t_internal,t_us,A,B,F,G,var_squeezed,var_antisqueezed,var_vacuum\n";
  for (const SweepRow &row : result.rows) {
    os << format_double(row.value) << ',' << (row.valid ? format_double(row.metric) : std::string()) << ','
       << (row.valid ? 1 : 0) << ',' << format_double(row.coefs.t) << ','
       << format_double(units.to_physical_time_us(row.coefs.t)) << ',' << format_double(row.coefs.a_coef) << ','
       << format_double(row.coefs.b_coef) << ',' << format_double(row.coefs.big_f) << ','
       << format_double(row.coefs.big_g) << ',' << format_double(row.terms_plus.squeezed) << ','
       << format_double(row.terms_plus.antisqueezed) << ',' << format_double(row.terms_plus.vacuum) << '\n';
  }
}

inline void write_fig2_csv(std::ostream &os, const std::vector<Fig2Row> &rows, const Metadata &meta) {
  write_metadata(os, meta);
  os << "panel,kappa_over_chi,r,t_us,snr,fidelity\n";
  for (const Fig2Row &row : rows) {
    os << (row.panel == Fig2Panel::kAB ? "ab" : "cd") << ',' << format_double(row.kappa_over_chi) << ','
       << format_double(row.r) << ',' << format_double(row.t_us) << ',' << format_double(row.snr) << ','
       << format_double(row.fidelity) << '\n';
  }
}

inline void write_fig3_csv(std::ostream &os, const Fig3Tables &tables, const Metadata &meta) {
  write_metadata(os, meta);
  os << "table,x,snr,fidelity,snr_coherent,fidelity_coherent\n";
  auto emit = [&](const char *name, const std::vector<Fig3Row> &rows) {
    for (const Fig3Row &row : rows) {
      os << name << ',' << format_double(row.x) << ',' << format_double(row.snr) << ','
         << format_double(row.fidelity) << ',' << format_double(row.snr_coherent) << ','
         << format_double(row.fidelity_coherent) << '\n';
    }
  };
  emit("delta_theta", tables.delta_theta);
  emit("r", tables.squeezing);
}

inline void write_shots_csv(std::ostream &os, const ShotBatch &batch, const Metadata &meta) {
  Metadata full = meta;
  full.emplace_back("generator_id", batch.generator_id);
  full.emplace_back("batch_seed", std::to_string(batch.seed));
  full.emplace_back("batch_n", std::to_string(batch.n));
  write_metadata(os, full);
  os << "state,outcome\n";
  for (double x : batch.outcomes_plus) {
    os << "+1," << format_double(x) << '\n';
  }
  for (double x : batch.outcomes_minus) {
    os << "-1," << format_double(x) << '\n';
  }
}

}  // namespace sqreadout

#endif  // SQREADOUT_CSV_HPP
