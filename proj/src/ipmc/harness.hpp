// Copyright 2026 The ipmc Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipmc/circuits.hpp"
#include "ipmc/evolution.hpp"

namespace ipmc {

/// Resolved experiment configuration. Text form: one key=value per line,
/// '#' comments. Keys match the field names.
struct RunConfig {
  std::string family = "rqc1d";  ///< rqc1d | pqc1d | rqc2d | pqc2d | qft | ptsu-convergence
  std::size_t n = 13;            ///< qubits (line families, qft, ptsu-convergence)
  std::size_t lx = 4;            ///< grid families
  std::size_t ly = 4;
  std::size_t depth = 20;        ///< physical depth D
  std::size_t chi = 16;
  std::size_t g = 0;
  std::string engine = "ptebd";  ///< ptebd | sequential | both
  bool stabilize = true;
  std::vector<std::uint64_t> seeds{1};
  unsigned threads = 1;
  std::string output;            ///< CSV path, empty for none
  std::size_t statevector_cap = kDefaultStatevectorCap;
  std::string oracle = "auto";   ///< auto | on | off
  bool parity = false;           ///< single seed, both engines
  std::size_t chi0 = 10;         ///< initial bond dimension of qft inputs
  std::size_t instances = 100;   ///< ptsu-convergence
  std::size_t steps = 10;        ///< ptsu-convergence

  std::size_t qubits() const;
  /// Throws kArgument when family constraints are violated.
  void validate() const;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
/// Sets one key from its text value. Throws kParse on unknown keys or values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
/// key=value lines in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);
/// "1..10" or "1,2,5".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// One CSV row.
struct ExperimentRecord {
  std::uint64_t seed = 0;
  std::string engine;
  std::size_t layer = 0;
  std::size_t compiled_layer = 0;
  double norm_n = 1.0;
  double norm_nstar = 1.0;
  double eps_global = 0.0;
  double fidelity_lb_tight = 1.0;  ///< cumulative product, clamped at 0
  double fidelity_lb_loose = 1.0;  ///< cumulative product, clamped at 0
  double canonical_distance = 0.0;
  std::optional<double> fidelity_vs_oracle;
  std::int64_t elapsed_ns = 0;
  std::size_t parallel_rounds = 0;
};

inline constexpr const char* kCsvHeader =
    "seed,engine,layer,compiled_layer,norm_n,norm_nstar,eps_global,fidelity_lb_tight,"
    "fidelity_lb_loose,canonical_distance,fidelity_vs_oracle,elapsed_ns,parallel_rounds";

std::string format_record(const ExperimentRecord& r);
/// Config preamble, header, rows.
void write_csv(std::ostream& out, const RunConfig& cfg, const std::vector<ExperimentRecord>& rows);
/// Throws kParse with the 1-based line number on malformed input.
std::vector<ExperimentRecord> read_csv(std::istream& in);

/// Bound bookkeeping over truncating steps. Steps entering with canonical
/// distance >= 1e-6 are counted as out of regime, not checked.
struct BoundAudit {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t out_of_regime = 0;
};

struct LayerAggregate {
  std::string engine;
  std::size_t compiled_layer = 0;
  std::size_t count = 0;
  std::size_t fidelity_count = 0;
  double fidelity_mean = 0.0, fidelity_min = 0.0, fidelity_max = 0.0;
  double norm_nstar_mean = 0.0;
  double eps_mean = 0.0;
  double elapsed_ns_mean = 0.0;
};

struct EngineAggregate {
  std::string engine;
  std::size_t seeds = 0;
  std::size_t rows = 0;
  std::size_t final_fidelity_count = 0;
  double final_fidelity_mean = 0.0, final_fidelity_min = 0.0, final_fidelity_max = 0.0;
  /// Mean over rows with compiled_layer > 0 (the first layer is warm-up).
  double elapsed_ns_per_layer = 0.0;
  /// Mean over seeds of the summed elapsed time.
  double elapsed_ns_total = 0.0;
};

struct Summary {
  std::vector<EngineAggregate> engines;
  std::vector<LayerAggregate> layers;
  BoundAudit audit;

  const EngineAggregate* engine(const std::string& name) const;
  std::string to_json() const;
};

/// Deterministic aggregation of rows (ordered by engine, then layer).
Summary summarize(const std::vector<ExperimentRecord>& rows);
/// summarize() of a CSV file.
Summary report_summary(const std::string& csv_path);

struct ExperimentResult {
  std::vector<ExperimentRecord> rows;
  Summary summary;
  std::size_t physical_depth = 0;
  std::size_t compiled_depth = 0;
};

/// Builds the circuit for each seed, runs the selected engines in lockstep
/// with the oracle and writes the CSV if cfg.output is set.
ExperimentResult run_experiment(const RunConfig& cfg);

/// Compiled circuit for a config and seed (families other than
/// ptsu-convergence).
CompiledCircuit build_circuit(const RunConfig& cfg, std::uint64_t seed);
/// Starting state: |0...0>, or a random chi0 state for qft.
VidalMps initial_state(const RunConfig& cfg, std::uint64_t seed);

/// Mean canonical distance after each PtSU step, starting from canonical
/// random states truncated to chi/2 and renormalized.
struct ConvergenceCurve {
  std::size_t n = 0;
  std::size_t chi = 0;
  std::vector<double> mean, min, max;  ///< index = PtSU steps taken
};
ConvergenceCurve ptsu_convergence(std::size_t n, std::size_t chi, std::size_t instances,
                                  std::size_t steps, std::uint64_t seed, unsigned threads = 1);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceCurve>& curves);

/// Per-size timing and round structure of both engines.
struct ScalingRow {
  std::string engine;
  std::size_t n = 0;
  unsigned threads = 1;
  std::size_t truncating_layers = 0;
  double elapsed_ns_per_layer = 0.0;  ///< mean over truncating layers after warm-up
  std::size_t min_rounds = 0;         ///< over truncating layers
  std::size_t max_rounds = 0;
  double two_site_updates_per_layer = 0.0;
};
struct ScalingResult {
  std::vector<ScalingRow> rows;
  bool rounds_size_independent = false;  ///< pTEBD: every truncating layer has 2 + g rounds
  bool sequential_linear = false;        ///< sequential updates per layer = (N-1)/2
  std::optional<double> ptebd_time_ratio;       ///< t(max N) / t(min N)
  std::optional<double> sequential_time_ratio;
};
/// Runs rqc1d circuits of the given sizes. threads_per_4_sites > 0 gives each
/// size ceil(N/4) threads; 0 uses one thread.
ScalingResult scaling_probe(const std::vector<std::size_t>& sizes, std::size_t depth,
                            std::size_t chi, std::size_t g, std::size_t repeats,
                            bool thread_per_4_sites, std::uint64_t seed = 1);
void write_scaling_csv(std::ostream& out, const ScalingResult& r);

/// Compiled and physical depths of our QFT plus simulation accuracy/timing.
struct QftBenchRow {
  std::size_t n = 0;
  std::string engine;
  std::size_t chi = 0;
  std::size_t physical_depth = 0;
  std::size_t compiled_depth = 0;
  std::optional<std::size_t> reference_compiled_depth;
  std::size_t seeds = 0;
  std::optional<double> fidelity_mean;
  double elapsed_ns_per_layer = 0.0;
};
std::vector<QftBenchRow> qft_bench(const std::vector<std::size_t>& sizes, std::size_t chi,
                                   std::size_t g, const std::vector<std::uint64_t>& seeds,
                                   std::size_t chi0, std::size_t statevector_cap, unsigned threads);
void write_qft_csv(std::ostream& out, const std::vector<QftBenchRow>& rows);

}  // namespace ipmc
