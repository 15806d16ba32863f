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

// Randomized property checks over seeds.
#include <gtest/gtest.h>

#include <cmath>

#include "ipmc/circuits.hpp"
#include "ipmc/evolution.hpp"
#include "ipmc/mps.hpp"
#include "ipmc/rng.hpp"
#include "oracles.hpp"

namespace ipmc {
namespace {

using testing::mps_amplitudes;

class Seeds : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Seeds, ParallelTruncationBounds) {
  Rng rng = Rng::stream(GetParam(), {1});
  const std::size_t n = 2 + rng.next_u64() % 7;
  const std::size_t chi = 2 + rng.next_u64() % 7;
  const std::size_t chi_p = 1 + rng.next_u64() % (chi - 1);
  VidalMps m = random_mps(n, chi, GetParam());
  const auto psi = mps_amplitudes(m);
  const TruncationReport r = parallel_truncate(m, chi_p);
  const auto tilde = mps_amplitudes(m);
  EXPECT_LE(testing::distance2(psi, tilde), 2 * r.global_eps + 1e-10);
  const double n2 = testing::norm2(tilde);
  const double f2 = std::norm(testing::inner(psi, tilde)) / n2;
  EXPECT_GE(f2, r.fidelity_lb_tight - 1e-10);
  EXPECT_GE(f2, r.fidelity_lb_loose - 1e-10);
  const double nn = std::sqrt(n2);
  EXPECT_GE(nn, r.norm_lb - 1e-10);
  EXPECT_LE(nn, 1.0 + 1e-10);
  scale_bonds(m, r);
  const double ns = norm(m);
  EXPECT_GE(ns, r.stabilized_lb - 1e-10);
  EXPECT_LE(ns, r.stabilized_ub + 1e-10);
}

TEST_P(Seeds, UnitaryLayersPreserveNormAndCanonicalForm) {
  const Circuit c = pqc_1d(6, 4, GetParam());
  VidalMps m = product_state(std::vector<int>(6, 0));
  for (const Layer& l : c.layers) {
    const StepTrace tr = ptebd_apply_layer(m, l, 64, 0);
    EXPECT_NEAR(tr.norm_n, 1.0, 1e-12);
    EXPECT_LT(tr.canonical_distance_after, 1e-10);
  }
}

TEST_P(Seeds, OverlapSatisfiesCauchySchwarz) {
  const VidalMps a = random_mps(5, 4, GetParam()), b = random_mps(5, 4, GetParam() + 1000);
  EXPECT_LE(std::abs(overlap(a, b)), norm(a) * norm(b) + 1e-12);
  EXPECT_NEAR(std::abs(overlap(a, a)), norm(a) * norm(a), 1e-12);
}

TEST_P(Seeds, SequentialStateIsAlwaysCanonical) {
  const Circuit c = rqc_1d(7, 6, GetParam());
  VidalMps m = product_state(std::vector<int>(7, 0));
  for (const Layer& l : c.layers) {
    const StepTrace tr = sequential_apply_layer(m, l, 3);
    EXPECT_LT(tr.canonical_distance_after, 1e-10);
    EXPECT_LE(m.max_bond_dim(), 3u);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, Seeds, ::testing::Range<std::uint64_t>(1, 21));

}  // namespace
}  // namespace ipmc
