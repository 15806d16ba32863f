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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ipmc/error.hpp"
#include "ipmc/mps.hpp"
#include "oracles.hpp"

namespace ipmc {
namespace {

using testing::mps_amplitudes;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

TEST(ProductState, AmplitudeIsOneOnTheBitstring) {
  const VidalMps m = product_state({1, 0, 1});
  m.validate();
  const auto psi = mps_amplitudes(m);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(psi[x], x == 0b101 ? cplx(1.0) : cplx(0.0));
  EXPECT_DOUBLE_EQ(norm(m), 1.0);
  EXPECT_NEAR(canonical_distance(m).distance, 0.0, 1e-15);
  EXPECT_EQ(code_of([] { (void)product_state({0, 2}); }), ErrorCode::kArgument);
  EXPECT_EQ(code_of([] { (void)product_state({}); }), ErrorCode::kArgument);
}

TEST(Validate, RejectsBrokenStructure) {
  VidalMps m = random_mps(4, 4, 1);
  VidalMps bad = m;
  bad.lambdas.pop_back();
  EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::kShape);
  bad = m;
  std::swap(bad.lambdas[2][0], bad.lambdas[2][1]);
  EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::kArgument);
  bad = m;
  bad.gammas[1] = DenseTensor({1, 2, 1});
  EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::kShape);
}

class RandomStates : public ::testing::TestWithParam<std::pair<std::size_t, std::size_t>> {};

TEST_P(RandomStates, CanonicalNormalizedAndBounded) {
  const auto [n, chi] = GetParam();
  const VidalMps m = random_mps(n, chi, 7 * n + chi);
  m.validate();
  EXPECT_LE(m.max_bond_dim(), chi);
  EXPECT_LT(canonical_distance(m).distance, 1e-12);
  EXPECT_NEAR(norm(m), 1.0, 1e-12);
  EXPECT_NEAR(testing::norm2(mps_amplitudes(m)), 1.0, 1e-12);
}

TEST_P(RandomStates, CanonicalizePreservesTheVector) {
  const auto [n, chi] = GetParam();
  const VidalMps raw = random_raw_mps(n, chi, 3 * n + chi);
  const VidalMps c = canonicalize(raw);
  EXPECT_LT(canonical_distance(c).distance, 1e-12);
  const auto a = mps_amplitudes(raw);
  auto b = mps_amplitudes(c);
  const double scale = std::exp(c.log_norm_offset - raw.log_norm_offset);
  for (auto& x : b) x *= scale;
  EXPECT_LT(testing::distance2(a, b), 1e-20 + 1e-20 * testing::norm2(a));
}

TEST_P(RandomStates, SchmidtWeightsMatchReducedDensityMatrix) {
  const auto [n, chi] = GetParam();
  const VidalMps m = random_mps(n, chi, 11 * n + chi);
  const auto psi = mps_amplitudes(m);
  for (std::size_t b = 1; b < n; ++b) {
    const auto w = testing::schmidt_weights(psi, n, b);
    const auto& lam = m.lambdas[b];
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double expect = k < lam.size() ? lam[k] * lam[k] : 0.0;
      EXPECT_NEAR(w[k], expect, 1e-10) << "bond " << b << " level " << k;
    }
    double s = 0.0;
    for (double x : w)
      if (x > 1e-300) s -= x * std::log(x);
    EXPECT_NEAR(entanglement_entropy(m, b), s, 1e-9);
    EXPECT_FALSE(entanglement_spectrum(m, b).approximate);
  }
}

TEST_P(RandomStates, NormAndOverlapAgreeWithDense) {
  const auto [n, chi] = GetParam();
  const VidalMps a = random_raw_mps(n, chi, 100 + n), b = random_raw_mps(n, chi, 200 + chi);
  const auto pa = mps_amplitudes(a), pb = mps_amplitudes(b);
  EXPECT_NEAR(norm(a), std::sqrt(testing::norm2(pa)), 1e-10);
  const cplx ov = overlap(a, b), ref = testing::inner(pa, pb);
  EXPECT_NEAR(std::abs(ov - ref), 0.0, 1e-10 * std::max(1.0, std::abs(ref)));
  const Statevector sv = to_statevector(a);
  for (std::size_t x = 0; x < pa.size(); ++x) EXPECT_NEAR(std::abs(sv.amplitudes[x] - pa[x]), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Sizes, RandomStates,
                         ::testing::Values(std::pair<std::size_t, std::size_t>{2, 2},
                                           std::pair<std::size_t, std::size_t>{3, 2},
                                           std::pair<std::size_t, std::size_t>{5, 3},
                                           std::pair<std::size_t, std::size_t>{6, 8},
                                           std::pair<std::size_t, std::size_t>{8, 4}));

TEST(RandomStates, SeedDeterminism) {
  const VidalMps a = random_mps(6, 4, 42), b = random_mps(6, 4, 42), c = random_mps(6, 4, 43);
  EXPECT_EQ(mps_amplitudes(a), mps_amplitudes(b));
  EXPECT_NE(mps_amplitudes(a), mps_amplitudes(c));
}

TEST(CanonicalDistance, DetectsBrokenGauge) {
  VidalMps m = random_mps(5, 4, 9);
  m.lambdas[2][0] *= 1.3;
  EXPECT_GT(canonical_distance(m).distance, 1e-3);
  EXPECT_TRUE(entanglement_spectrum(m, 2).approximate);
}

TEST(CanonicalDistance, InvariantUnderGlobalScale) {
  VidalMps m = random_mps(5, 4, 10);
  for (auto& g : m.gammas) g *= cplx(1.7);
  EXPECT_LT(canonical_distance(m).distance, 1e-10);
}

TEST(Statevector, CapIsEnforced) {
  const VidalMps m = product_state(std::vector<int>(12, 0));
  EXPECT_EQ(code_of([&] { (void)to_statevector(m, 10); }), ErrorCode::kResource);
}

TEST(Sampling, FrequenciesFollowBornRule) {
  const VidalMps m = random_mps(4, 4, 21);
  const auto psi = mps_amplitudes(m);
  const std::size_t draws = 20000;
  const auto samples = sample_bitstrings(m, draws, 5);
  std::vector<double> freq(16, 0.0);
  for (const auto& s : samples) {
    ASSERT_EQ(s.size(), 4u);
    std::size_t x = 0;
    for (int b : s) x = 2 * x + static_cast<std::size_t>(b);
    freq[x] += 1.0 / static_cast<double>(draws);
  }
  for (std::size_t x = 0; x < 16; ++x) {
    const double p = std::norm(psi[x]);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(draws));
    EXPECT_NEAR(freq[x], p, 5 * sigma + 1e-3) << "outcome " << x;
  }
  EXPECT_EQ(sample_bitstring(m, 5), samples[0]);
  EXPECT_EQ(sample_bitstrings(m, 10, 5), sample_bitstrings(m, 10, 5));
}

TEST(Sampling, RequiresCanonicalForm) {
  VidalMps m = random_mps(4, 4, 22);
  m.lambdas[1][0] *= 2.0;
  EXPECT_EQ(code_of([&] { (void)sample_bitstring(m, 1); }), ErrorCode::kPrecondition);
}

TEST(Snapshot, RoundTripIsExact) {
  VidalMps m = random_mps(6, 5, 23);
  m.log_norm_offset = -3.25;
  std::stringstream buf;
  write_snapshot(m, buf);
  const VidalMps r = read_snapshot(buf);
  ASSERT_EQ(r.n_sites(), m.n_sites());
  EXPECT_EQ(r.lambdas, m.lambdas);
  EXPECT_EQ(r.log_norm_offset, m.log_norm_offset);
  for (std::size_t i = 0; i < m.n_sites(); ++i) {
    EXPECT_EQ(r.gammas[i].shape(), m.gammas[i].shape());
    EXPECT_TRUE(std::equal(r.gammas[i].data().begin(), r.gammas[i].data().end(), m.gammas[i].data().begin()));
  }
  const auto path = std::filesystem::temp_directory_path() / "ipmc_snapshot_test.bin";
  save_snapshot(m, path.string());
  EXPECT_EQ(mps_amplitudes(load_snapshot(path.string())), mps_amplitudes(m));
  std::filesystem::remove(path);
}

TEST(Snapshot, RejectsCorruptInput) {
  std::stringstream bad("NOTANMPS");
  EXPECT_EQ(code_of([&] { (void)read_snapshot(bad); }), ErrorCode::kParse);
  std::stringstream buf;
  write_snapshot(random_mps(4, 2, 1), buf);
  std::string s = buf.str();
  s.resize(s.size() / 2);
  std::stringstream cut(s);
  EXPECT_EQ(code_of([&] { (void)read_snapshot(cut); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { (void)load_snapshot("/nonexistent/ipmc.bin"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace ipmc
