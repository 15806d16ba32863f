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

// Exercises the public C interface only.
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "ipmc/ipmc.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ipmc_string_free(s);
  return out;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(ipmc_version(), "0.1.0");
  EXPECT_NE(std::string(ipmc_status_name(IPMC_ERR_PARSE)), "");
}

TEST(CApi, NullArgumentsAreReported) {
  EXPECT_EQ(ipmc_mps_random(4, 2, 1, nullptr), IPMC_ERR_ARGUMENT);
  EXPECT_NE(std::string(ipmc_last_error()).find("null"), std::string::npos);
  double v = 0;
  EXPECT_EQ(ipmc_mps_norm(nullptr, &v), IPMC_ERR_ARGUMENT);
  ipmc_mps_destroy(nullptr);
  ipmc_circuit_destroy(nullptr);
  EXPECT_EQ(ipmc_mps_sites(nullptr), 0u);
}

TEST(CApi, MpsLifecycle) {
  ipmc_mps* m = nullptr;
  ASSERT_EQ(ipmc_mps_random(6, 4, 3, &m), IPMC_OK);
  EXPECT_EQ(ipmc_mps_sites(m), 6u);
  double n = 0, d = 1, s = 0;
  ASSERT_EQ(ipmc_mps_norm(m, &n), IPMC_OK);
  EXPECT_NEAR(n, 1.0, 1e-12);
  ASSERT_EQ(ipmc_mps_canonical_distance(m, &d), IPMC_OK);
  EXPECT_LT(d, 1e-12);
  ASSERT_EQ(ipmc_mps_entropy(m, 3, &s), IPMC_OK);
  EXPECT_GT(s, 0.0);
  size_t dim = 0;
  ASSERT_EQ(ipmc_mps_bond_dim(m, 3, &dim), IPMC_OK);
  EXPECT_EQ(dim, 4u);
  EXPECT_EQ(ipmc_mps_bond_dim(m, 7, &dim), IPMC_ERR_ARGUMENT);

  ipmc_mps* c = nullptr;
  ASSERT_EQ(ipmc_mps_clone(m, &c), IPMC_OK);
  ipmc_truncation_info info{};
  ASSERT_EQ(ipmc_mps_truncate(c, 2, 1, &info), IPMC_OK);
  EXPECT_GT(info.global_eps, 0.0);
  ASSERT_EQ(ipmc_mps_norm(c, &n), IPMC_OK);
  EXPECT_GE(n, info.stabilized_lb - 1e-10);
  EXPECT_LE(n, info.stabilized_ub + 1e-10);
  double re = 0, im = 0;
  ASSERT_EQ(ipmc_mps_overlap(m, c, &re, &im), IPMC_OK);
  EXPECT_GT(std::hypot(re, im), 0.5);
  ASSERT_EQ(ipmc_mps_normalize(c), IPMC_OK);
  ASSERT_EQ(ipmc_mps_norm(c, &n), IPMC_OK);
  EXPECT_NEAR(n, 1.0, 1e-12);
  ASSERT_EQ(ipmc_mps_canonical_distance(c, &d), IPMC_OK);
  EXPECT_GT(d, 1e-6);
  for (int k = 0; k < 3; ++k) ASSERT_EQ(ipmc_mps_ptsu_step(c), IPMC_OK);
  ASSERT_EQ(ipmc_mps_canonical_distance(c, &d), IPMC_OK);
  EXPECT_LT(d, 1e-10);

  const auto path = (std::filesystem::temp_directory_path() / "ipmc_capi.bin").string();
  ASSERT_EQ(ipmc_mps_save(c, path.c_str()), IPMC_OK);
  ipmc_mps* l = nullptr;
  ASSERT_EQ(ipmc_mps_load(path.c_str(), &l), IPMC_OK);
  ASSERT_EQ(ipmc_mps_overlap(l, c, &re, &im), IPMC_OK);
  double nc = 0;
  ipmc_mps_norm(c, &nc);
  EXPECT_NEAR(re, nc * nc, 1e-12);
  std::filesystem::remove(path);
  EXPECT_EQ(ipmc_mps_load("/nonexistent/x.bin", &l), IPMC_ERR_IO);

  std::vector<int> bits(5 * 6);
  ASSERT_EQ(ipmc_mps_sample(m, 5, 9, bits.data()), IPMC_OK);
  for (int b : bits) EXPECT_TRUE(b == 0 || b == 1);

  ipmc_mps_destroy(l);
  ipmc_mps_destroy(c);
  ipmc_mps_destroy(m);
}

TEST(CApi, CircuitSimulationAgreesWithStatevector) {
  ipmc_circuit* phys = nullptr;
  ASSERT_EQ(ipmc_circuit_generate("rqc2d", 0, 3, 3, 8, 4, &phys), IPMC_OK);
  EXPECT_EQ(ipmc_circuit_qubits(phys), 9u);
  EXPECT_EQ(ipmc_circuit_layers(phys), 8u);
  ipmc_circuit* comp = nullptr;
  ASSERT_EQ(ipmc_circuit_compile(phys, &comp), IPMC_OK);
  EXPECT_EQ(ipmc_circuit_compiled_depth(comp), 2u * (2 + 3 * 2 + 2));

  const int zeros[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  ipmc_mps* m = nullptr;
  ASSERT_EQ(ipmc_mps_product(zeros, 9, &m), IPMC_OK);
  EXPECT_EQ(ipmc_mps_apply_circuit(m, phys, IPMC_ENGINE_PTEBD, 16, 0, 1, 1), IPMC_ERR_PRECONDITION);
  ASSERT_EQ(ipmc_mps_apply_circuit(m, comp, IPMC_ENGINE_PTEBD, 16, 0, 1, 2), IPMC_OK);
  ipmc_statevector* sv = nullptr;
  ASSERT_EQ(ipmc_statevector_zero(9, &sv), IPMC_OK);
  ASSERT_EQ(ipmc_statevector_run(sv, comp), IPMC_OK);
  EXPECT_EQ(ipmc_statevector_dim(sv), 512u);
  double f = 0;
  ASSERT_EQ(ipmc_statevector_fidelity(sv, m, &f), IPMC_OK);
  EXPECT_NEAR(f, 1.0, 1e-9);
  std::vector<double> amps(1024);
  ASSERT_EQ(ipmc_statevector_amplitudes(sv, amps.data()), IPMC_OK);
  double total = 0;
  for (double x : amps) total += x * x;
  EXPECT_NEAR(total, 1.0, 1e-12);

  char* text = nullptr;
  ASSERT_EQ(ipmc_circuit_write(phys, &text), IPMC_OK);
  const std::string s = take(text);
  ipmc_circuit* back = nullptr;
  ASSERT_EQ(ipmc_circuit_read(s.c_str(), &back), IPMC_OK);
  EXPECT_EQ(ipmc_circuit_gate_count(back), ipmc_circuit_gate_count(phys));
  EXPECT_EQ(ipmc_circuit_read("garbage", &back), IPMC_ERR_PARSE);

  ipmc_statevector_destroy(sv);
  ipmc_mps_destroy(m);
  ipmc_circuit_destroy(back);
  ipmc_circuit_destroy(comp);
  ipmc_circuit_destroy(phys);
  EXPECT_EQ(ipmc_circuit_generate("bogus", 3, 0, 0, 2, 1, &phys), IPMC_ERR_ARGUMENT);
}

TEST(CApi, QftCircuitIsReadyToSimulate) {
  ipmc_circuit* q = nullptr;
  ASSERT_EQ(ipmc_circuit_qft(5, &q), IPMC_OK);
  ipmc_mps* m = nullptr;
  ASSERT_EQ(ipmc_mps_random(5, 2, 1, &m), IPMC_OK);
  ipmc_statevector* sv = nullptr;
  ASSERT_EQ(ipmc_statevector_from_mps(m, 0, &sv), IPMC_OK);
  ASSERT_EQ(ipmc_mps_apply_circuit(m, q, IPMC_ENGINE_SEQUENTIAL, 32, 0, 1, 1), IPMC_OK);
  ASSERT_EQ(ipmc_statevector_run(sv, q), IPMC_OK);
  double f = 0;
  ASSERT_EQ(ipmc_statevector_fidelity(sv, m, &f), IPMC_OK);
  EXPECT_NEAR(f, 1.0, 1e-10);
  ipmc_statevector_destroy(sv);
  ipmc_mps_destroy(m);
  ipmc_circuit_destroy(q);
}

TEST(CApi, ConfigAndExperiments) {
  ipmc_config* cfg = nullptr;
  ASSERT_EQ(ipmc_config_parse("family=rqc1d\nn=5\ndepth=4\nchi=2\n", &cfg), IPMC_OK);
  ASSERT_EQ(ipmc_config_set(cfg, "engine", "both"), IPMC_OK);
  EXPECT_EQ(ipmc_config_set(cfg, "nonsense", "1"), IPMC_ERR_PARSE);
  char* v = nullptr;
  ASSERT_EQ(ipmc_config_get(cfg, "engine", &v), IPMC_OK);
  EXPECT_EQ(take(v), "both");
  const auto csv = (std::filesystem::temp_directory_path() / "ipmc_capi_run.csv").string();
  ASSERT_EQ(ipmc_config_set(cfg, "output", csv.c_str()), IPMC_OK);
  char* json = nullptr;
  ASSERT_EQ(ipmc_run(cfg, &json), IPMC_OK);
  const std::string run = take(json);
  EXPECT_NE(run.find("\"sequential\""), std::string::npos);
  ASSERT_EQ(ipmc_report(csv.c_str(), &json), IPMC_OK);
  EXPECT_NE(take(json).find("\"ptebd\""), std::string::npos);
  std::filesystem::remove(csv);
  EXPECT_EQ(ipmc_report(csv.c_str(), &json), IPMC_ERR_IO);

  ASSERT_EQ(ipmc_config_set(cfg, "output", ""), IPMC_OK);
  ASSERT_EQ(ipmc_config_set(cfg, "instances", "4"), IPMC_OK);
  ASSERT_EQ(ipmc_config_set(cfg, "steps", "3"), IPMC_OK);
  ASSERT_EQ(ipmc_config_set(cfg, "n", "6"), IPMC_OK);
  const size_t chis[] = {4};
  ASSERT_EQ(ipmc_ptsu_convergence(cfg, chis, 1, &json), IPMC_OK);
  EXPECT_NE(take(json).find("mean_non_increasing"), std::string::npos);

  const size_t sizes[] = {9, 13};
  ASSERT_EQ(ipmc_scale(cfg, sizes, 2, 1, 0, &json), IPMC_OK);
  EXPECT_NE(take(json).find("\"rounds_size_independent\": true"), std::string::npos);
  const size_t qsizes[] = {4};
  ASSERT_EQ(ipmc_qft_bench(cfg, qsizes, 1, &json), IPMC_OK);
  EXPECT_NE(take(json).find("compiled_depth"), std::string::npos);

  ASSERT_EQ(ipmc_config_set(cfg, "n", "6"), IPMC_OK);
  EXPECT_EQ(ipmc_run(cfg, &json), IPMC_ERR_ARGUMENT);
  EXPECT_NE(std::string(ipmc_last_error()).find("odd"), std::string::npos);
  ipmc_config_destroy(cfg);
}

}  // namespace
