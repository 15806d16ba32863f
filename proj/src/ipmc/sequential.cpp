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

#include <algorithm>
#include <cmath>

#include "ipmc/detail.hpp"
#include "ipmc/error.hpp"
#include "ipmc/evolution.hpp"

namespace ipmc {
namespace {

using detail::as_matrix;
using detail::RowMat;
using Clock = std::chrono::steady_clock;

// Mixed-canonical chain. Sites left of `center` are left isometries, sites
// right of it right isometries; the center tensor carries the norm.
struct MixedChain {
  std::vector<DenseTensor> sites;
  std::size_t center = 0;

  // Moves the center one site to the right via an SVD of the center tensor.
  void shift_right() {
    DenseTensor& c = sites[center];
    const std::size_t l = c.extent(0), r = c.extent(2);
    SvdFactorization f = trimmed_svd(c.reshaped({l * 2, r}), kNoTruncation);
    const std::size_t k = f.s.size();
    RowMat sv = as_matrix(f.vdag, k, r);
    for (std::size_t j = 0; j < k; ++j) sv.row(static_cast<Eigen::Index>(j)) *= f.s[j];
    DenseTensor& next = sites[center + 1];
    const std::size_t nr = next.extent(2);
    RowMat merged = sv * as_matrix(next, r, 2 * nr);
    c = f.u.reshaped({l, 2, k});
    next = detail::from_matrix(merged, {k, 2, nr});
    ++center;
  }
};

}  // namespace

StepTrace sequential_apply_layer(VidalMps& state, const Layer& layer, std::size_t chi,
                                 const EngineOptions& opts) {
  const std::size_t n = state.n_sites();
  validate_layer(layer, n);
  require(chi >= 1, ErrorCode::kArgument, "chi must be >= 1");

  std::vector<OrientedPair> pairs;
  for (const Gate& g : layer.gates)
    if (g.is_pair()) pairs.push_back(orient_pair(g, n));
  std::sort(pairs.begin(), pairs.end(),
            [](const OrientedPair& a, const OrientedPair& b) { return a.bond < b.bond; });

  StepTrace tr;
  tr.norm_pre = 1.0;
  tr.canonical_distance_before = opts.diagnostics ? canonical_distance(state).distance
                                                  : std::numeric_limits<double>::quiet_NaN();
  const auto t0 = Clock::now();

  for (const Gate& g : layer.gates)
    if (!g.is_pair()) apply_single_site(state, g.matrix, g.targets[0]);

  std::vector<double> eps(n - 1, 0.0);
  if (!pairs.empty()) {
    // Right-orthogonal chain B_i = Gamma_i Lambda_{i+1}, center at site 0.
    MixedChain chain;
    chain.sites.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      DenseTensor b = state.gammas[i];
      const std::size_t l = b.extent(0), r = b.extent(2);
      const auto& lam_l = state.lambdas[i];
      const auto& lam_r = state.lambdas[i + 1];
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t x = 0; x < 2 * r; ++x) b[a * 2 * r + x] *= lam_r[x % r] * (i == 0 ? lam_l[a] : 1.0);
      chain.sites.push_back(std::move(b));
    }

    for (const OrientedPair& p : pairs) {
      const std::size_t sa = p.bond - 1;
      while (chain.center < sa) chain.shift_right();
      DenseTensor& ta = chain.sites[sa];
      DenseTensor& tb = chain.sites[sa + 1];
      const std::size_t l = ta.extent(0), m = ta.extent(2), r = tb.extent(2);
      RowMat theta = as_matrix(ta, l * 2, m) * as_matrix(tb, m, 2 * r);
      const std::vector<cplx>& u = p.matrix;
      for (std::size_t a = 0; a < l; ++a) {
        for (std::size_t c = 0; c < r; ++c) {
          cplx v[4];
          for (std::size_t s1 = 0; s1 < 2; ++s1)
            for (std::size_t s2 = 0; s2 < 2; ++s2) v[s1 * 2 + s2] = theta(a * 2 + s1, s2 * r + c);
          for (std::size_t s1 = 0; s1 < 2; ++s1) {
            for (std::size_t s2 = 0; s2 < 2; ++s2) {
              const std::size_t i = s1 * 2 + s2;
              theta(a * 2 + s1, s2 * r + c) =
                  u[i * 4] * v[0] + u[i * 4 + 1] * v[1] + u[i * 4 + 2] * v[2] + u[i * 4 + 3] * v[3];
            }
          }
        }
      }
      const DenseTensor tt({2 * l, 2 * r}, std::vector<cplx>(theta.data(), theta.data() + theta.size()));
      SvdFactorization f = trimmed_svd(tt, chi);
      double kept = 0.0;
      for (double s : f.s) kept += s * s;
      const double total = kept + f.discarded_weight;
      require(kept > 0.0, ErrorCode::kDegenerateState, "sequential: bond lost all weight");
      eps[p.bond - 1] = f.discarded_weight / total;
      const double renorm = 1.0 / std::sqrt(kept);
      const std::size_t k = f.s.size();
      ta = f.u.reshaped({l, 2, k});
      DenseTensor sv = f.vdag.reshaped({k, 2, r});
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t x = 0; x < 2 * r; ++x) sv[j * 2 * r + x] *= f.s[j] * renorm;
      tb = std::move(sv);
      chain.center = sa + 1;
    }
    while (chain.center + 1 < n) chain.shift_right();
    const double offset = state.log_norm_offset;
    state = from_left_orthogonal(std::move(chain.sites), 0.0);
    state.log_norm_offset = offset;
  }
  tr.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0);

  tr.report = make_truncation_report(std::move(eps));
  tr.truncated = tr.report.truncated();
  tr.compressed = tr.truncated;
  // Without the per-cut renormalization the norm would be prod sqrt(1 - eps_i).
  double ln = 0.0;
  for (double e : tr.report.per_bond_eps) ln += 0.5 * std::log1p(-std::min(e, 1.0 - 1e-300));
  tr.norm_n = std::exp(ln);
  tr.norm_nstar = opts.diagnostics ? norm(state) : std::numeric_limits<double>::quiet_NaN();
  tr.canonical_distance_after = opts.diagnostics ? canonical_distance(state).distance
                                                 : std::numeric_limits<double>::quiet_NaN();
  tr.two_site_updates = pairs.size();
  tr.parallel_rounds = pairs.size();
  return tr;
}

}  // namespace ipmc
