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

#include "ipmc/circuits.hpp"
#include "ipmc/error.hpp"
#include "ipmc/mps.hpp"
#include "ipmc/oracle.hpp"
#include "oracles.hpp"

namespace ipmc {
namespace {

using testing::Vec;

Statevector random_state(std::size_t n, std::uint64_t seed) {
  const std::size_t dim = std::size_t{1} << n;
  const Vec u = testing::random_unitary(dim, seed);
  return Statevector(n, Vec(u.begin(), u.begin() + static_cast<long>(dim)));
}

TEST(ApplyGate, MatchesEmbeddedOperator) {
  const Statevector psi = random_state(4, 1);
  for (const auto& [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 1}, {0, 3}, {3, 2}}) {
    Gate g = standard_gate("cz", {a, b});
    g.matrix = testing::random_unitary(4, 10 * a + b);
    Statevector out = psi;
    apply_gate(out, g);
    const Vec expect = testing::apply_dense(testing::embed_gate(g, 4), psi.amplitudes);
    EXPECT_LT(testing::distance2(out.amplitudes, expect), 1e-28);
  }
  Gate s = standard_gate("h", {2});
  Statevector out = psi;
  apply_gate(out, s);
  EXPECT_LT(testing::distance2(out.amplitudes, testing::apply_dense(testing::embed_gate(s, 4), psi.amplitudes)),
            1e-28);
}

TEST(StatevectorRun, MatchesDenseRun) {
  const Circuit c = rqc_1d(5, 4, 2);
  const Statevector out = statevector_run(c, Statevector::zero_state(5));
  Vec psi(32, 0.0);
  psi[0] = 1.0;
  EXPECT_LT(testing::distance2(out.amplitudes, testing::dense_run(c, psi)), 1e-26);
  EXPECT_THROW((void)statevector_run(c, Statevector::zero_state(4)), Error);
  EXPECT_THROW((void)statevector_run(c, Statevector::zero_state(5), 4), Error);
}

TEST(Fidelity, PhaseAndScaleInvariant) {
  const Statevector a = random_state(3, 3);
  Statevector b = a;
  for (auto& x : b.amplitudes) x *= std::polar(2.5, 0.7);
  EXPECT_NEAR(fidelity(a, b), 1.0, 1e-12);
  const Statevector c = random_state(3, 4);
  EXPECT_NEAR(fidelity(a, c), testing::state_fidelity(a.amplitudes, c.amplitudes), 1e-12);
  EXPECT_THROW((void)fidelity(a, Statevector(3, Vec(8, 0.0))), Error);
}

TEST(DenseTruncation, AgreesWithTestOracle) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const VidalMps m = random_mps(6, 6, seed);
    const Statevector lib = dense_parallel_truncation(m, 1 + seed % 4);
    const Vec ref = testing::projected_amplitudes(m, 1 + seed % 4);
    EXPECT_LT(testing::distance2(lib.amplitudes, ref), 1e-24);
  }
  EXPECT_THROW((void)dense_parallel_truncation(random_mps(11, 2, 1), 1), Error);
}

TEST(Dft, MatchesNaiveSum) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Statevector in = random_state(n, 20 + n);
    const Statevector out = dft_reference(n, in);
    EXPECT_LT(testing::distance2(out.amplitudes, testing::naive_dft(in.amplitudes)), 1e-26);
  }
  EXPECT_THROW((void)dft_reference(13, Statevector::zero_state(13)), Error);
}

TEST(PermuteQubits, MovesBits) {
  const Statevector b = Statevector::basis_state(3, 0b100);
  const Statevector p = permute_qubits(b, {2, 0, 1});
  EXPECT_EQ(p.amplitudes[0b001], cplx(1.0));
  const Statevector r = random_state(4, 30);
  const Statevector back = permute_qubits(permute_qubits(r, {1, 2, 3, 0}), {3, 0, 1, 2});
  EXPECT_EQ(back.amplitudes, r.amplitudes);
}

}  // namespace
}  // namespace ipmc
