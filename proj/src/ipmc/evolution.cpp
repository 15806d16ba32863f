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

#include "ipmc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ipmc/detail.hpp"
#include "ipmc/error.hpp"

namespace ipmc {
namespace {

using detail::as_matrix;
using detail::RowMat;
using Clock = std::chrono::steady_clock;

constexpr double kGateUnitaryTolerance = 1e-10;

void require_unitary4(const std::vector<cplx>& m) {
  require(m.size() == 16, ErrorCode::kArgument, "two-site gate must be 4x4");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += std::conj(m[k * 4 + i]) * m[k * 4 + j];
      require(std::abs(acc - (i == j ? 1.0 : 0.0)) <= kGateUnitaryTolerance, ErrorCode::kArgument,
              "two-site gate is not unitary");
    }
  }
}

// 1/x above the zero threshold of the vector, 0 below it.
std::vector<double> pseudo_inverse(const std::vector<double>& lam, const char* where) {
  const double top = lam.empty() ? 0.0 : *std::max_element(lam.begin(), lam.end());
  require(top > 0.0 && std::isfinite(top), ErrorCode::kConditioning,
          std::string("zero environment weights at ") + where);
  std::vector<double> inv(lam.size());
  for (std::size_t k = 0; k < lam.size(); ++k) inv[k] = lam[k] > kZeroThreshold * top ? 1.0 / lam[k] : 0.0;
  return inv;
}

// (Ua x Ub) on the basis index 2a + b.
std::vector<cplx> kron2(const std::vector<cplx>& ua, const std::vector<cplx>& ub) {
  std::vector<cplx> out(16);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out[(i * 2 + j) * 4 + (k * 2 + l)] = ua[i * 2 + k] * ub[j * 2 + l];
  return out;
}

std::vector<cplx> matmul4(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(16, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < 4; ++j) out[i * 4 + j] += a[i * 4 + k] * b[k * 4 + j];
  return out;
}

const std::vector<cplx>& identity2() {
  static const std::vector<cplx> id{1.0, 0.0, 0.0, 1.0};
  return id;
}

double measured_distance(const VidalMps& s, const EngineOptions& o) {
  return o.diagnostics ? canonical_distance(s).distance : std::numeric_limits<double>::quiet_NaN();
}

double measured_norm(const VidalMps& s, const EngineOptions& o) {
  return o.diagnostics ? norm(s) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

TruncationReport make_truncation_report(std::vector<double> per_bond_eps) {
  TruncationReport r;
  r.per_bond_eps = std::move(per_bond_eps);
  double sum_sqrt = 0.0, log_nu = 0.0;
  r.global_eps = 0.0;
  for (double e : r.per_bond_eps) {
    r.global_eps += e;
    sum_sqrt += std::sqrt(e);
    const double nu = e < 1.0 ? 1.0 / std::sqrt(1.0 - e) : std::numeric_limits<double>::infinity();
    r.per_bond_nu.push_back(nu);
    log_nu += std::log(nu);
  }
  r.fidelity_lb_tight = 1.0 - 2.0 * r.global_eps;
  r.fidelity_lb_loose = 1.0 - 2.0 * sum_sqrt;
  r.norm_lb = 1.0 - std::sqrt(2.0 * r.global_eps);
  r.norm_ub = 1.0;
  r.stabilized_ub = std::exp(log_nu);
  r.stabilized_lb = r.norm_lb * r.stabilized_ub;
  return r;
}

void apply_single_site(VidalMps& state, const std::vector<cplx>& u, std::size_t site) {
  require(site < state.n_sites(), ErrorCode::kArgument, "site out of range");
  require(u.size() == 4, ErrorCode::kArgument, "single-site gate must be 2x2");
  DenseTensor& g = state.gammas[site];
  const std::size_t l = g.extent(0), r = g.extent(2);
  for (std::size_t a = 0; a < l; ++a) {
    cplx* p0 = g.raw() + (a * 2) * r;
    cplx* p1 = p0 + r;
    for (std::size_t c = 0; c < r; ++c) {
      const cplx x0 = p0[c], x1 = p1[c];
      p0[c] = u[0] * x0 + u[1] * x1;
      p1[c] = u[2] * x0 + u[3] * x1;
    }
  }
}

double tebd_two_site(VidalMps& state, const std::optional<std::vector<cplx>>& gate,
                     std::size_t bond, std::optional<std::size_t> chi_max) {
  const std::size_t n = state.n_sites();
  require(bond >= 1 && bond < n, ErrorCode::kArgument,
          "bond " + std::to_string(bond) + " out of range [1, " + std::to_string(n - 1) + "]");
  if (gate) require_unitary4(*gate);
  const std::size_t sa = bond - 1, sb = bond;
  const DenseTensor& g1 = state.gammas[sa];
  const DenseTensor& g2 = state.gammas[sb];
  const auto& lam_l = state.lambdas[sa];
  const auto& lam_m = state.lambdas[bond];
  const auto& lam_r = state.lambdas[bond + 1];
  const std::size_t l = g1.extent(0), m = g1.extent(2), r = g2.extent(2);
  const std::vector<double> inv_l = pseudo_inverse(lam_l, "left bond");
  const std::vector<double> inv_r = pseudo_inverse(lam_r, "right bond");

  // theta[(a, s1), (s2, c)] = lamL[a] G1[a, s1, :] lamM G2[:, s2, c] lamR[c]
  RowMat left = as_matrix(g1, l * 2, m);
  for (std::size_t k = 0; k < m; ++k) left.col(static_cast<Eigen::Index>(k)) *= lam_m[k];
  RowMat theta = left * as_matrix(g2, m, 2 * r);
  for (std::size_t row = 0; row < 2 * l; ++row) {
    const double wl = lam_l[row / 2];
    for (std::size_t col = 0; col < 2 * r; ++col) theta(row, col) *= wl * lam_r[col % r];
  }
  if (gate) {
    const std::vector<cplx>& u = *gate;
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t c = 0; c < r; ++c) {
        cplx v[4], w[4];
        for (std::size_t s1 = 0; s1 < 2; ++s1)
          for (std::size_t s2 = 0; s2 < 2; ++s2) v[s1 * 2 + s2] = theta(a * 2 + s1, s2 * r + c);
        for (std::size_t i = 0; i < 4; ++i) {
          w[i] = u[i * 4 + 0] * v[0] + u[i * 4 + 1] * v[1] + u[i * 4 + 2] * v[2] + u[i * 4 + 3] * v[3];
        }
        for (std::size_t s1 = 0; s1 < 2; ++s1)
          for (std::size_t s2 = 0; s2 < 2; ++s2) theta(a * 2 + s1, s2 * r + c) = w[s1 * 2 + s2];
      }
    }
  }

  const DenseTensor tt({2 * l, 2 * r}, std::vector<cplx>(theta.data(), theta.data() + theta.size()));
  SvdFactorization f = trimmed_svd(tt, chi_max.value_or(kNoTruncation));
  const std::size_t k = f.s.size();

  DenseTensor ng1 = f.u.reshaped({l, 2, k});
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t x = 0; x < 2 * k; ++x) ng1[a * 2 * k + x] *= inv_l[a];
  DenseTensor ng2 = f.vdag.reshaped({k, 2, r});
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t x = 0; x < 2 * r; ++x) ng2[j * 2 * r + x] *= inv_r[x % r];

  state.gammas[sa] = std::move(ng1);
  state.gammas[sb] = std::move(ng2);
  state.lambdas[bond] = std::move(f.s);
  return f.discarded_weight;
}

TruncationReport parallel_truncate(VidalMps& state, std::size_t chi_prime, const RoundExecutor& exec) {
  require(chi_prime >= 1, ErrorCode::kArgument, "parallel_truncate: chi_prime must be >= 1");
  const std::size_t n = state.n_sites();
  const std::size_t nb = n - 1;
  std::vector<std::vector<std::size_t>> keep(n + 1);
  std::vector<double> eps(nb, 0.0);
  std::vector<std::size_t> orig(nb), kept(nb);

  // Phase 1: keep-sets, one task per inner bond, read only.
  exec.run(nb, [&](std::size_t t) {
    const std::size_t b = t + 1;
    const auto& lam = state.lambdas[b];
    std::vector<std::size_t> idx(lam.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&lam](std::size_t x, std::size_t y) { return lam[x] > lam[y]; });
    const std::size_t keep_n = std::min(chi_prime, idx.size());
    double total = 0.0, dropped = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double w = lam[idx[j]] * lam[idx[j]];
      total += w;
      if (j >= keep_n) dropped += w;
    }
    idx.resize(keep_n);
    std::sort(idx.begin(), idx.end());
    eps[t] = total > 0.0 ? std::clamp(dropped / total, 0.0, 1.0) : 0.0;
    orig[t] = lam.size();
    kept[t] = keep_n;
    keep[b] = std::move(idx);
  });

  // Phase 2: site i absorbs the projectors of bonds i and i+1 and installs
  // the cut weights of bond i+1.
  exec.run(n, [&](std::size_t i) {
    const bool cut_left = i >= 1 && kept[i - 1] < orig[i - 1];
    const bool cut_right = i + 1 < n && kept[i] < orig[i];
    if (!cut_left && !cut_right) return;
    const DenseTensor& g = state.gammas[i];
    const std::size_t l = g.extent(0), r = g.extent(2);
    std::vector<std::size_t> rows(l), cols(r);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    if (cut_left) rows = keep[i];
    if (cut_right) cols = keep[i + 1];
    DenseTensor out({rows.size(), 2, cols.size()});
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t c = 0; c < cols.size(); ++c)
          out[(a * 2 + s) * cols.size() + c] = g[(rows[a] * 2 + s) * r + cols[c]];
    state.gammas[i] = std::move(out);
    if (cut_right) {
      const auto& lam = state.lambdas[i + 1];
      std::vector<double> nl(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) nl[c] = lam[cols[c]];
      state.lambdas[i + 1] = std::move(nl);
    }
  });

  TruncationReport rep = make_truncation_report(std::move(eps));
  rep.original_dims = std::move(orig);
  rep.kept_dims = std::move(kept);
  return rep;
}

void scale_bonds(VidalMps& state, const TruncationReport& report, const RoundExecutor& exec) {
  const std::size_t nb = state.n_sites() - 1;
  require(report.per_bond_nu.size() == nb, ErrorCode::kArgument,
          "stabilize_norm: report does not match the state");
  for (std::size_t t = 0; t < nb; ++t) {
    require(report.per_bond_eps[t] < 1.0, ErrorCode::kDegenerateTruncation,
            "bond " + std::to_string(t + 1) + " lost all of its weight");
  }
  exec.run(nb, [&](std::size_t t) {
    const double nu = report.per_bond_nu[t];
    for (double& x : state.lambdas[t + 1]) x *= nu;
  });
}

double stabilize_norm(VidalMps& state, const TruncationReport& report, const RoundExecutor& exec) {
  scale_bonds(state, report, exec);
  return norm(state);
}

void ptsu_step(VidalMps& state, const RoundExecutor& exec) {
  const std::size_t n = state.n_sites();
  for (std::size_t first : {std::size_t{1}, std::size_t{2}}) {
    const std::size_t count = n > first ? (n - 1 - first) / 2 + 1 : 0;
    exec.run(count, [&](std::size_t t) { tebd_two_site(state, std::nullopt, first + 2 * t); });
  }
}

StepTrace ipmc(VidalMps& state, std::size_t chi, std::size_t g, const EngineOptions& opts) {
  const RoundExecutor& exec = opts.exec();
  StepTrace tr;
  tr.norm_pre = measured_norm(state, opts);
  tr.canonical_distance_before = measured_distance(state, opts);

  auto t0 = Clock::now();
  tr.report = parallel_truncate(state, chi, exec);
  tr.elapsed += Clock::now() - t0;
  tr.truncated = tr.report.truncated();
  tr.norm_n = measured_norm(state, opts);

  if (opts.stabilize) {
    t0 = Clock::now();
    scale_bonds(state, tr.report, exec);
    tr.elapsed += Clock::now() - t0;
    tr.norm_nstar = measured_norm(state, opts);
  } else {
    tr.norm_nstar = tr.norm_n;
  }

  t0 = Clock::now();
  for (std::size_t k = 0; k < g; ++k) ptsu_step(state, exec);
  tr.elapsed += Clock::now() - t0;
  tr.two_site_updates = g * (state.n_sites() - 1);
  tr.parallel_rounds = 1 + g;
  tr.compressed = true;
  tr.canonical_distance_after = measured_distance(state, opts);
  return tr;
}

OrientedPair orient_pair(const Gate& g, std::size_t n_sites) {
  require(g.is_pair(), ErrorCode::kArgument, "orient_pair needs a two-qubit gate");
  const std::size_t a = g.targets[0], b = g.targets[1];
  require(a < n_sites && b < n_sites && (a + 1 == b || b + 1 == a), ErrorCode::kLayerValidation,
          "gate " + g.label + " on (" + std::to_string(a) + "," + std::to_string(b) +
              ") is not on neighbouring sites");
  if (a < b) return {b, g.matrix};
  return {a, reversed_pair_matrix(g.matrix)};
}

StepTrace ptebd_apply_layer(VidalMps& state, const Layer& layer, std::size_t chi, std::size_t g,
                            const EngineOptions& opts) {
  const std::size_t n = state.n_sites();
  validate_layer(layer, n);
  require(chi >= 1, ErrorCode::kArgument, "chi must be >= 1");

  // Fuse single-qubit gates into the pair gate on the same qubit.
  std::vector<const std::vector<cplx>*> single(n, nullptr);
  std::vector<char> in_pair(n, 0);
  for (const Gate& gt : layer.gates) {
    if (gt.is_pair()) in_pair[gt.targets[0]] = in_pair[gt.targets[1]] = 1;
    else single[gt.targets[0]] = &gt.matrix;
  }
  struct Task {
    std::size_t bond = 0;  // 0 for a single-site task
    std::size_t site = 0;
    std::vector<cplx> matrix;
  };
  std::vector<Task> tasks;
  for (const Gate& gt : layer.gates) {
    if (gt.is_pair()) {
      const auto& ua = single[gt.targets[0]] ? *single[gt.targets[0]] : identity2();
      const auto& ub = single[gt.targets[1]] ? *single[gt.targets[1]] : identity2();
      Gate fused = gt;
      fused.matrix = matmul4(gt.matrix, kron2(ua, ub));
      OrientedPair op = orient_pair(fused, n);
      tasks.push_back({op.bond, 0, std::move(op.matrix)});
    } else if (!in_pair[gt.targets[0]]) {
      tasks.push_back({0, gt.targets[0], gt.matrix});
    }
  }

  const RoundExecutor& exec = opts.exec();
  const auto t0 = Clock::now();
  exec.run(tasks.size(), [&](std::size_t k) {
    const Task& t = tasks[k];
    if (t.bond == 0) apply_single_site(state, t.matrix, t.site);
    else tebd_two_site(state, t.matrix, t.bond);
  });
  const auto gate_time = Clock::now() - t0;
  const std::size_t pair_updates = layer.pair_count();

  StepTrace tr;
  if (state.max_bond_dim() > chi) {
    tr = ipmc(state, chi, g, opts);
    tr.parallel_rounds += 1;
  } else {
    tr.report = make_truncation_report(std::vector<double>(n - 1, 0.0));
    tr.norm_pre = tr.norm_n = tr.norm_nstar = measured_norm(state, opts);
    tr.canonical_distance_before = tr.canonical_distance_after = measured_distance(state, opts);
    tr.parallel_rounds = 1;
  }
  tr.two_site_updates += pair_updates;
  tr.elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(gate_time);
  return tr;
}

}  // namespace ipmc
