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

#include "ipmc/ipmc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ipmc/circuits.hpp"
#include "ipmc/error.hpp"
#include "ipmc/evolution.hpp"
#include "ipmc/harness.hpp"
#include "ipmc/mps.hpp"
#include "ipmc/oracle.hpp"
#include "ipmc/parallel.hpp"

struct ipmc_mps {
  ipmc::VidalMps state;
};

struct ipmc_circuit {
  ipmc::CompiledCircuit compiled;
  bool nearest_neighbour = false;
};

struct ipmc_statevector {
  ipmc::Statevector sv;
};

struct ipmc_config {
  ipmc::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

ipmc_status set_error(ipmc_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <typename F>
ipmc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return IPMC_OK;
  } catch (const ipmc::Error& e) {
    return set_error(static_cast<ipmc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(IPMC_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IPMC_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(IPMC_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* name) {
  if (!p) ipmc::fail(ipmc::ErrorCode::kArgument, std::string(name) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

ipmc::CompiledCircuit as_physical(ipmc::Circuit c) {
  ipmc::CompiledCircuit cc;
  cc.provenance.resize(c.layers.size());
  std::iota(cc.provenance.begin(), cc.provenance.end(), std::size_t{0});
  cc.circuit = std::move(c);
  cc.compiled_depth = ipmc::count_pair_layers(cc.circuit);
  return cc;
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  std::ofstream out(path);
  ipmc::require(static_cast<bool>(out), ipmc::ErrorCode::kIo, "cannot write " + path);
  out << body;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}

}  // namespace

extern "C" {

const char* ipmc_version(void) { return "0.1.0"; }

const char* ipmc_last_error(void) { return g_last_error.c_str(); }

const char* ipmc_status_name(ipmc_status status) {
  return ipmc::error_code_name(static_cast<ipmc::ErrorCode>(status));
}

void ipmc_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- config

ipmc_status ipmc_config_create(ipmc_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ipmc_config{};
  });
}

ipmc_status ipmc_config_load(const char* path, ipmc_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ipmc_config{ipmc::load_config(path)};
  });
}

ipmc_status ipmc_config_parse(const char* text, ipmc_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new ipmc_config{ipmc::parse_config(in)};
  });
}

ipmc_status ipmc_config_set(ipmc_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    ipmc::set_config_value(cfg->cfg, key, value);
  });
}

ipmc_status ipmc_config_get(const ipmc_config* cfg, const char* key, char** value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    for (const auto& [k, v] : ipmc::config_entries(cfg->cfg)) {
      if (k == key) {
        *value = dup_string(v);
        return;
      }
    }
    ipmc::fail(ipmc::ErrorCode::kArgument, std::string("unknown config key '") + key + "'");
  });
}

ipmc_status ipmc_config_to_string(const ipmc_config* cfg, char** text) {
  return guarded([&] {
    need(cfg, "cfg");
    need(text, "text");
    std::string s;
    for (const auto& [k, v] : ipmc::config_entries(cfg->cfg)) s += k + "=" + v + "\n";
    *text = dup_string(s);
  });
}

void ipmc_config_destroy(ipmc_config* cfg) { delete cfg; }

// ---------------------------------------------------------------- experiments

ipmc_status ipmc_run(const ipmc_config* cfg, char** summary_json) {
  return guarded([&] {
    need(cfg, "cfg");
    const ipmc::ExperimentResult r = ipmc::run_experiment(cfg->cfg);
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(r.summary.to_json());
    j["physical_depth"] = r.physical_depth;
    j["compiled_depth"] = r.compiled_depth;
    j["records"] = r.rows.size();
    put_string(summary_json, j.dump(2));
  });
}

ipmc_status ipmc_report(const char* csv_path, char** summary_json) {
  return guarded([&] {
    need(csv_path, "csv_path");
    put_string(summary_json, ipmc::report_summary(csv_path).to_json());
  });
}

ipmc_status ipmc_ptsu_convergence(const ipmc_config* cfg, const size_t* chis, size_t chi_count,
                                  char** result_json) {
  return guarded([&] {
    need(cfg, "cfg");
    need(chis, "chis");
    const ipmc::RunConfig& c = cfg->cfg;
    ipmc::require(chi_count > 0, ipmc::ErrorCode::kArgument, "at least one chi is required");
    std::vector<ipmc::ConvergenceCurve> curves;
    for (size_t i = 0; i < chi_count; ++i)
      curves.push_back(ipmc::ptsu_convergence(c.n, chis[i], c.instances, c.steps, c.seeds.at(0), c.threads));
    std::ostringstream csv;
    ipmc::write_convergence_csv(csv, curves);
    write_output(c.output, csv.str());
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& cv : curves) {
      bool monotone = true;
      for (size_t t = 1; t < cv.mean.size(); ++t) monotone = monotone && cv.mean[t] <= cv.mean[t - 1];
      j.push_back({{"n", cv.n}, {"chi", cv.chi}, {"mean", cv.mean}, {"min", cv.min}, {"max", cv.max},
                   {"mean_non_increasing", monotone}});
    }
    put_string(result_json, j.dump(2));
  });
}

ipmc_status ipmc_scale(const ipmc_config* cfg, const size_t* sizes, size_t size_count, size_t repeats,
                       int thread_per_4_sites, char** result_json) {
  return guarded([&] {
    need(cfg, "cfg");
    need(sizes, "sizes");
    const ipmc::RunConfig& c = cfg->cfg;
    const std::vector<std::size_t> sz(sizes, sizes + size_count);
    const ipmc::ScalingResult r =
        ipmc::scaling_probe(sz, c.depth, c.chi, c.g, repeats, thread_per_4_sites != 0, c.seeds.at(0));
    std::ostringstream csv;
    ipmc::write_scaling_csv(csv, r);
    write_output(c.output, csv.str());
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"engine", row.engine},
                      {"n", row.n},
                      {"threads", row.threads},
                      {"truncating_layers", row.truncating_layers},
                      {"elapsed_ns_per_layer", row.elapsed_ns_per_layer},
                      {"min_rounds", row.min_rounds},
                      {"max_rounds", row.max_rounds},
                      {"two_site_updates_per_layer", row.two_site_updates_per_layer}});
    nlohmann::ordered_json j;
    j["rows"] = rows;
    j["rounds_size_independent"] = r.rounds_size_independent;
    j["sequential_linear"] = r.sequential_linear;
    j["ptebd_time_ratio"] = optional_json(r.ptebd_time_ratio);
    j["sequential_time_ratio"] = optional_json(r.sequential_time_ratio);
    put_string(result_json, j.dump(2));
  });
}

ipmc_status ipmc_qft_bench(const ipmc_config* cfg, const size_t* sizes, size_t size_count, char** result_json) {
  return guarded([&] {
    need(cfg, "cfg");
    need(sizes, "sizes");
    const ipmc::RunConfig& c = cfg->cfg;
    const std::vector<std::size_t> sz(sizes, sizes + size_count);
    const auto rows = ipmc::qft_bench(sz, c.chi, c.g, c.seeds, c.chi0, c.statevector_cap, c.threads);
    std::ostringstream csv;
    ipmc::write_qft_csv(csv, rows);
    write_output(c.output, csv.str());
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"n", r.n},
                   {"engine", r.engine},
                   {"chi", r.chi},
                   {"physical_depth", r.physical_depth},
                   {"compiled_depth", r.compiled_depth},
                   {"reference_compiled_depth", r.reference_compiled_depth
                                                    ? nlohmann::json(*r.reference_compiled_depth)
                                                    : nlohmann::json()},
                   {"seeds", r.seeds},
                   {"fidelity_mean", optional_json(r.fidelity_mean)},
                   {"elapsed_ns_per_layer", r.elapsed_ns_per_layer}});
    }
    put_string(result_json, j.dump(2));
  });
}

// ---------------------------------------------------------------- circuits

ipmc_status ipmc_circuit_generate(const char* family, size_t n, size_t lx, size_t ly, size_t depth,
                                  uint64_t seed, ipmc_circuit** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const std::string f = family;
    ipmc::Circuit c;
    if (f == "rqc1d") c = ipmc::rqc_1d(n, depth, seed);
    else if (f == "pqc1d") c = ipmc::pqc_1d(n, depth, seed);
    else if (f == "rqc2d") c = ipmc::rqc_2d(lx, ly, depth, seed);
    else if (f == "pqc2d") c = ipmc::pqc_2d(lx, ly, depth, seed);
    else ipmc::fail(ipmc::ErrorCode::kArgument, "unknown circuit family '" + f + "'");
    *out = new ipmc_circuit{as_physical(std::move(c)), false};
  });
}

ipmc_status ipmc_circuit_qft(size_t n, ipmc_circuit** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ipmc_circuit{ipmc::qft_circuit(n), true};
  });
}

ipmc_status ipmc_circuit_compile(const ipmc_circuit* circuit, ipmc_circuit** out) {
  return guarded([&] {
    need(circuit, "circuit");
    need(out, "out");
    if (circuit->nearest_neighbour) {
      *out = new ipmc_circuit{*circuit};
      return;
    }
    const ipmc::Circuit& c = circuit->compiled.circuit;
    ipmc::CompiledCircuit cc = c.geometry == ipmc::Geometry::kGrid
                                   ? ipmc::recompile_2d(c, ipmc::snake_path(c.lx, c.ly))
                                   : ipmc::compile_1d(c);
    *out = new ipmc_circuit{std::move(cc), true};
  });
}

ipmc_status ipmc_circuit_read(const char* text, ipmc_circuit** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    ipmc::Circuit c = ipmc::read_circuit(in);
    bool nn = c.geometry == ipmc::Geometry::kLine;
    for (const auto& layer : c.layers)
      for (const auto& g : layer.gates)
        if (g.is_pair()) {
          const auto a = g.targets[0], b = g.targets[1];
          nn = nn && (a + 1 == b || b + 1 == a);
        }
    *out = new ipmc_circuit{as_physical(std::move(c)), nn};
  });
}

ipmc_status ipmc_circuit_write(const ipmc_circuit* circuit, char** text) {
  return guarded([&] {
    need(circuit, "circuit");
    need(text, "text");
    std::ostringstream out;
    ipmc::write_circuit(circuit->compiled.circuit, out);
    *text = dup_string(out.str());
  });
}

size_t ipmc_circuit_qubits(const ipmc_circuit* circuit) {
  return circuit ? circuit->compiled.circuit.n_qubits : 0;
}

size_t ipmc_circuit_layers(const ipmc_circuit* circuit) {
  return circuit ? circuit->compiled.circuit.layers.size() : 0;
}

size_t ipmc_circuit_compiled_depth(const ipmc_circuit* circuit) {
  return circuit ? circuit->compiled.compiled_depth : 0;
}

size_t ipmc_circuit_gate_count(const ipmc_circuit* circuit) {
  return circuit ? circuit->compiled.circuit.gate_count() : 0;
}

void ipmc_circuit_destroy(ipmc_circuit* circuit) { delete circuit; }

// ---------------------------------------------------------------- MPS

ipmc_status ipmc_mps_product(const int* bits, size_t n, ipmc_mps** out) {
  return guarded([&] {
    need(bits, "bits");
    need(out, "out");
    *out = new ipmc_mps{ipmc::product_state(std::vector<int>(bits, bits + n))};
  });
}

ipmc_status ipmc_mps_random(size_t n, size_t chi, uint64_t seed, ipmc_mps** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ipmc_mps{ipmc::random_mps(n, chi, seed)};
  });
}

ipmc_status ipmc_mps_clone(const ipmc_mps* state, ipmc_mps** out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = new ipmc_mps{*state};
  });
}

ipmc_status ipmc_mps_load(const char* path, ipmc_mps** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ipmc_mps{ipmc::load_snapshot(path)};
  });
}

ipmc_status ipmc_mps_save(const ipmc_mps* state, const char* path) {
  return guarded([&] {
    need(state, "state");
    need(path, "path");
    ipmc::save_snapshot(state->state, path);
  });
}

void ipmc_mps_destroy(ipmc_mps* state) { delete state; }

size_t ipmc_mps_sites(const ipmc_mps* state) { return state ? state->state.n_sites() : 0; }

ipmc_status ipmc_mps_bond_dim(const ipmc_mps* state, size_t bond, size_t* dim) {
  return guarded([&] {
    need(state, "state");
    need(dim, "dim");
    ipmc::require(bond <= state->state.n_sites(), ipmc::ErrorCode::kArgument, "bond out of range");
    *dim = state->state.bond_dim(bond);
  });
}

ipmc_status ipmc_mps_norm(const ipmc_mps* state, double* norm) {
  return guarded([&] {
    need(state, "state");
    need(norm, "norm");
    *norm = ipmc::norm(state->state);
  });
}

ipmc_status ipmc_mps_overlap(const ipmc_mps* a, const ipmc_mps* b, double* re, double* im) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    const ipmc::cplx v = ipmc::overlap(a->state, b->state);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ipmc_status ipmc_mps_canonical_distance(const ipmc_mps* state, double* distance) {
  return guarded([&] {
    need(state, "state");
    need(distance, "distance");
    *distance = ipmc::canonical_distance(state->state).distance;
  });
}

ipmc_status ipmc_mps_entropy(const ipmc_mps* state, size_t bond, double* entropy) {
  return guarded([&] {
    need(state, "state");
    need(entropy, "entropy");
    *entropy = ipmc::entanglement_entropy(state->state, bond);
  });
}

ipmc_status ipmc_mps_canonicalize(ipmc_mps* state) {
  return guarded([&] {
    need(state, "state");
    state->state = ipmc::canonicalize(state->state);
  });
}

ipmc_status ipmc_mps_normalize(ipmc_mps* state) {
  return guarded([&] {
    need(state, "state");
    ipmc::normalize(state->state);
  });
}

ipmc_status ipmc_mps_truncate(ipmc_mps* state, size_t chi_prime, int stabilize, ipmc_truncation_info* info) {
  return guarded([&] {
    need(state, "state");
    const ipmc::TruncationReport r = ipmc::parallel_truncate(state->state, chi_prime);
    if (stabilize) ipmc::scale_bonds(state->state, r);
    if (info) {
      info->global_eps = r.global_eps;
      info->fidelity_lb_tight = r.fidelity_lb_tight;
      info->fidelity_lb_loose = r.fidelity_lb_loose;
      info->norm_lb = r.norm_lb;
      info->norm_ub = r.norm_ub;
      info->stabilized_lb = r.stabilized_lb;
      info->stabilized_ub = r.stabilized_ub;
    }
  });
}

ipmc_status ipmc_mps_ptsu_step(ipmc_mps* state) {
  return guarded([&] {
    need(state, "state");
    ipmc::ptsu_step(state->state);
  });
}

ipmc_status ipmc_mps_apply_circuit(ipmc_mps* state, const ipmc_circuit* circuit, ipmc_engine engine, size_t chi,
                                   size_t g, int stabilize, unsigned threads) {
  return guarded([&] {
    need(state, "state");
    need(circuit, "circuit");
    ipmc::require(circuit->nearest_neighbour, ipmc::ErrorCode::kPrecondition,
                  "circuit must be compiled to nearest-neighbour form first");
    ipmc::require(engine == IPMC_ENGINE_PTEBD || engine == IPMC_ENGINE_SEQUENTIAL, ipmc::ErrorCode::kArgument,
                  "unknown engine");
    ipmc::RoundExecutor exec(threads == 0 ? 1 : threads);
    ipmc::EngineOptions opts;
    opts.executor = &exec;
    opts.stabilize = stabilize != 0;
    opts.diagnostics = false;
    for (const ipmc::Layer& layer : circuit->compiled.circuit.layers) {
      if (engine == IPMC_ENGINE_PTEBD) ipmc::ptebd_apply_layer(state->state, layer, chi, g, opts);
      else ipmc::sequential_apply_layer(state->state, layer, chi, opts);
    }
  });
}

ipmc_status ipmc_mps_sample(const ipmc_mps* state, size_t count, uint64_t seed, int* bits) {
  return guarded([&] {
    need(state, "state");
    need(bits, "bits");
    const auto draws = ipmc::sample_bitstrings(state->state, count, seed);
    for (const auto& d : draws) bits = std::copy(d.begin(), d.end(), bits);
  });
}

// ---------------------------------------------------------------- statevector

ipmc_status ipmc_statevector_from_mps(const ipmc_mps* state, size_t cap, ipmc_statevector** out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = new ipmc_statevector{ipmc::to_statevector(state->state, cap == 0 ? ipmc::kDefaultStatevectorCap : cap)};
  });
}

ipmc_status ipmc_statevector_zero(size_t n, ipmc_statevector** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ipmc_statevector{ipmc::Statevector::zero_state(n)};
  });
}

ipmc_status ipmc_statevector_run(ipmc_statevector* sv, const ipmc_circuit* circuit) {
  return guarded([&] {
    need(sv, "sv");
    need(circuit, "circuit");
    sv->sv = ipmc::statevector_run(circuit->compiled, std::move(sv->sv));
  });
}

size_t ipmc_statevector_dim(const ipmc_statevector* sv) { return sv ? sv->sv.dim() : 0; }

ipmc_status ipmc_statevector_amplitudes(const ipmc_statevector* sv, double* re_im) {
  return guarded([&] {
    need(sv, "sv");
    need(re_im, "re_im");
    for (const auto& a : sv->sv.amplitudes) {
      *re_im++ = a.real();
      *re_im++ = a.imag();
    }
  });
}

ipmc_status ipmc_statevector_fidelity(const ipmc_statevector* exact, const ipmc_mps* approx, double* fidelity) {
  return guarded([&] {
    need(exact, "exact");
    need(approx, "approx");
    need(fidelity, "fidelity");
    *fidelity = ipmc::fidelity(exact->sv, approx->state);
  });
}

void ipmc_statevector_destroy(ipmc_statevector* sv) { delete sv; }

}  // extern "C"
