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

/* C interface to the ipmc library. All objects are opaque handles; every
 * fallible call returns an ipmc_status and records a message retrievable with
 * ipmc_last_error() on the calling thread. Strings returned through char**
 * out-parameters are owned by the caller and released with ipmc_string_free. */
#ifndef IPMC_IPMC_H
#define IPMC_IPMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IPMC_BUILDING_DLL)
#    define IPMC_API __declspec(dllexport)
#  else
#    define IPMC_API __declspec(dllimport)
#  endif
#else
#  define IPMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ipmc_status {
  IPMC_OK = 0,
  IPMC_ERR_DIMENSION = 1,
  IPMC_ERR_SHAPE = 2,
  IPMC_ERR_NUMERICAL = 3,
  IPMC_ERR_ARGUMENT = 4,
  IPMC_ERR_RESOURCE = 5,
  IPMC_ERR_DEGENERATE_STATE = 6,
  IPMC_ERR_PRECONDITION = 7,
  IPMC_ERR_CONDITIONING = 8,
  IPMC_ERR_LAYER_VALIDATION = 9,
  IPMC_ERR_UNSUPPORTED_LAYOUT = 10,
  IPMC_ERR_PARSE = 11,
  IPMC_ERR_IO = 12,
  IPMC_ERR_DEGENERATE_TRUNCATION = 13,
  IPMC_ERR_INTERNAL = 99
} ipmc_status;

typedef enum ipmc_engine {
  IPMC_ENGINE_PTEBD = 0,
  IPMC_ENGINE_SEQUENTIAL = 1
} ipmc_engine;

typedef struct ipmc_mps ipmc_mps;
typedef struct ipmc_circuit ipmc_circuit;
typedef struct ipmc_statevector ipmc_statevector;
typedef struct ipmc_config ipmc_config;

typedef struct ipmc_truncation_info {
  double global_eps;
  double fidelity_lb_tight;
  double fidelity_lb_loose;
  double norm_lb;
  double norm_ub;
  double stabilized_lb;
  double stabilized_ub;
} ipmc_truncation_info;

IPMC_API const char* ipmc_version(void);
IPMC_API const char* ipmc_last_error(void);
IPMC_API const char* ipmc_status_name(ipmc_status status);
IPMC_API void ipmc_string_free(char* s);

/* ---- run configuration (flat key=value) ---- */
IPMC_API ipmc_status ipmc_config_create(ipmc_config** out);
IPMC_API ipmc_status ipmc_config_load(const char* path, ipmc_config** out);
IPMC_API ipmc_status ipmc_config_parse(const char* text, ipmc_config** out);
IPMC_API ipmc_status ipmc_config_set(ipmc_config* cfg, const char* key, const char* value);
IPMC_API ipmc_status ipmc_config_get(const ipmc_config* cfg, const char* key, char** value);
/* Resolved config as key=value lines. */
IPMC_API ipmc_status ipmc_config_to_string(const ipmc_config* cfg, char** text);
IPMC_API void ipmc_config_destroy(ipmc_config* cfg);

/* ---- experiments ----
 * Each writes its CSV to the config's output path when one is set and returns
 * a JSON document describing the outcome. */
IPMC_API ipmc_status ipmc_run(const ipmc_config* cfg, char** summary_json);
IPMC_API ipmc_status ipmc_report(const char* csv_path, char** summary_json);
/* Uses n, instances, steps, the first seed, threads and output. */
IPMC_API ipmc_status ipmc_ptsu_convergence(const ipmc_config* cfg, const size_t* chis, size_t chi_count,
                                           char** result_json);
/* Uses depth, chi, g and the first seed. */
IPMC_API ipmc_status ipmc_scale(const ipmc_config* cfg, const size_t* sizes, size_t size_count,
                                size_t repeats, int thread_per_4_sites, char** result_json);
/* Uses chi, g, seeds, chi0, statevector_cap, threads and output. */
IPMC_API ipmc_status ipmc_qft_bench(const ipmc_config* cfg, const size_t* sizes, size_t size_count,
                                    char** result_json);

/* ---- circuits ----
 * family: rqc1d | pqc1d (use n), rqc2d | pqc2d (use lx, ly). */
IPMC_API ipmc_status ipmc_circuit_generate(const char* family, size_t n, size_t lx, size_t ly, size_t depth,
                                           uint64_t seed, ipmc_circuit** out);
/* Line-connectivity QFT, already in nearest-neighbour form. */
IPMC_API ipmc_status ipmc_circuit_qft(size_t n, ipmc_circuit** out);
/* Nearest-neighbour form on a line; grid circuits follow the snake path. */
IPMC_API ipmc_status ipmc_circuit_compile(const ipmc_circuit* circuit, ipmc_circuit** out);
IPMC_API ipmc_status ipmc_circuit_read(const char* text, ipmc_circuit** out);
IPMC_API ipmc_status ipmc_circuit_write(const ipmc_circuit* circuit, char** text);
IPMC_API size_t ipmc_circuit_qubits(const ipmc_circuit* circuit);
IPMC_API size_t ipmc_circuit_layers(const ipmc_circuit* circuit);
/* Layers carrying at least one two-qubit gate. */
IPMC_API size_t ipmc_circuit_compiled_depth(const ipmc_circuit* circuit);
IPMC_API size_t ipmc_circuit_gate_count(const ipmc_circuit* circuit);
IPMC_API void ipmc_circuit_destroy(ipmc_circuit* circuit);

/* ---- matrix product states ---- */
IPMC_API ipmc_status ipmc_mps_product(const int* bits, size_t n, ipmc_mps** out);
IPMC_API ipmc_status ipmc_mps_random(size_t n, size_t chi, uint64_t seed, ipmc_mps** out);
IPMC_API ipmc_status ipmc_mps_clone(const ipmc_mps* state, ipmc_mps** out);
IPMC_API ipmc_status ipmc_mps_load(const char* path, ipmc_mps** out);
IPMC_API ipmc_status ipmc_mps_save(const ipmc_mps* state, const char* path);
IPMC_API void ipmc_mps_destroy(ipmc_mps* state);
IPMC_API size_t ipmc_mps_sites(const ipmc_mps* state);
/* bond in 0..N; bonds 0 and N are trivial. */
IPMC_API ipmc_status ipmc_mps_bond_dim(const ipmc_mps* state, size_t bond, size_t* dim);
IPMC_API ipmc_status ipmc_mps_norm(const ipmc_mps* state, double* norm);
IPMC_API ipmc_status ipmc_mps_overlap(const ipmc_mps* a, const ipmc_mps* b, double* re, double* im);
IPMC_API ipmc_status ipmc_mps_canonical_distance(const ipmc_mps* state, double* distance);
IPMC_API ipmc_status ipmc_mps_entropy(const ipmc_mps* state, size_t bond, double* entropy);
IPMC_API ipmc_status ipmc_mps_canonicalize(ipmc_mps* state);
/* Rescales to unit norm; the factor is kept in the log-norm offset. */
IPMC_API ipmc_status ipmc_mps_normalize(ipmc_mps* state);
/* Cuts every bond to chi_prime; optionally rescales bonds to compensate. */
IPMC_API ipmc_status ipmc_mps_truncate(ipmc_mps* state, size_t chi_prime, int stabilize,
                                       ipmc_truncation_info* info);
IPMC_API ipmc_status ipmc_mps_ptsu_step(ipmc_mps* state);
IPMC_API ipmc_status ipmc_mps_apply_circuit(ipmc_mps* state, const ipmc_circuit* circuit, ipmc_engine engine,
                                            size_t chi, size_t g, int stabilize, unsigned threads);
/* bits receives count * N values in {0, 1}. Requires canonical form. */
IPMC_API ipmc_status ipmc_mps_sample(const ipmc_mps* state, size_t count, uint64_t seed, int* bits);

/* ---- statevector oracle ---- */
IPMC_API ipmc_status ipmc_statevector_from_mps(const ipmc_mps* state, size_t cap, ipmc_statevector** out);
IPMC_API ipmc_status ipmc_statevector_zero(size_t n, ipmc_statevector** out);
IPMC_API ipmc_status ipmc_statevector_run(ipmc_statevector* sv, const ipmc_circuit* circuit);
IPMC_API size_t ipmc_statevector_dim(const ipmc_statevector* sv);
/* Copies dim() complex amplitudes as interleaved (re, im) pairs. */
IPMC_API ipmc_status ipmc_statevector_amplitudes(const ipmc_statevector* sv, double* re_im);
IPMC_API ipmc_status ipmc_statevector_fidelity(const ipmc_statevector* exact, const ipmc_mps* approx,
                                               double* fidelity);
IPMC_API void ipmc_statevector_destroy(ipmc_statevector* sv);

#ifdef __cplusplus
}
#endif

#endif /* IPMC_IPMC_H */
