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

#include "ipmc/mps.hpp"

#include <algorithm>
#include <cmath>

#include "ipmc/detail.hpp"
#include "ipmc/error.hpp"
#include "ipmc/rng.hpp"

namespace ipmc {
namespace {

using detail::as_matrix;
using detail::CMapMat;
using detail::MapMat;
using detail::phys_slice;
using detail::RowMat;

constexpr double kCanonicalSampleTolerance = 1e-6;

std::size_t bond_cap(std::size_t n, std::size_t chi, std::size_t b) {
  // min(chi, 2^b, 2^(n-b)) without overflow.
  std::size_t cap = chi;
  const std::size_t e = std::min(b, n - b);
  if (e < 63) cap = std::min<std::size_t>(cap, std::size_t{1} << e);
  return cap;
}

// gamma scaled by diag(left) from the left and diag(right) from the right.
DenseTensor weighted(const DenseTensor& gamma, const std::vector<double>* left,
                     const std::vector<double>* right, double factor = 1.0) {
  DenseTensor out = gamma;
  const std::size_t l = gamma.extent(0), r = gamma.extent(2);
  for (std::size_t a = 0; a < l; ++a) {
    const double wl = (left ? (*left)[a] : 1.0) * factor;
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t c = 0; c < r; ++c) out[(a * 2 + s) * r + c] *= wl * (right ? (*right)[c] : 1.0);
  }
  return out;
}

std::vector<double> normalized(std::vector<double> s, double& log_acc) {
  double acc = 0.0;
  for (double x : s) acc += x * x;
  const double nrm = std::sqrt(acc);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    fail(ErrorCode::kDegenerateState, "canonicalize: state has zero or non-finite norm");
  }
  for (double& x : s) x /= nrm;
  log_acc += std::log(nrm);
  return s;
}

}  // namespace

std::size_t VidalMps::max_bond_dim() const {
  std::size_t m = 0;
  for (const auto& l : lambdas) m = std::max(m, l.size());
  return m;
}

std::vector<std::size_t> VidalMps::bond_dims() const {
  std::vector<std::size_t> dims;
  dims.reserve(lambdas.size());
  for (const auto& l : lambdas) dims.push_back(l.size());
  return dims;
}

void VidalMps::validate() const {
  const std::size_t n = gammas.size();
  require(n >= 1, ErrorCode::kArgument, "MPS must have at least one site");
  require(lambdas.size() == n + 1, ErrorCode::kShape,
          "MPS needs N+1 weight vectors, got " + std::to_string(lambdas.size()));
  require(lambdas.front().size() == 1 && lambdas.back().size() == 1, ErrorCode::kShape,
          "boundary bonds must have dimension 1");
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& g = gammas[i];
    require(g.rank() == 3 && g.extent(1) == 2, ErrorCode::kShape,
            "site " + std::to_string(i) + " tensor must be (l, 2, r), got " + shape_string(g.shape()));
    require(g.extent(0) == lambdas[i].size() && g.extent(2) == lambdas[i + 1].size(),
            ErrorCode::kShape, "site " + std::to_string(i) + " shape " + shape_string(g.shape()) +
                                   " does not chain with its bond weights");
  }
  for (std::size_t b = 0; b <= n; ++b) {
    const auto& l = lambdas[b];
    for (std::size_t k = 0; k < l.size(); ++k) {
      require(l[k] >= 0.0 && std::isfinite(l[k]), ErrorCode::kArgument,
              "bond " + std::to_string(b) + " has a negative or non-finite weight");
      require(k == 0 || l[k] <= l[k - 1], ErrorCode::kArgument,
              "bond " + std::to_string(b) + " weights are not descending");
    }
  }
}

VidalMps product_state(const std::vector<int>& bits) {
  require(!bits.empty(), ErrorCode::kArgument, "product_state: empty bit list");
  VidalMps m;
  m.lambdas.assign(bits.size() + 1, std::vector<double>{1.0});
  for (int b : bits) {
    require(b == 0 || b == 1, ErrorCode::kArgument, "product_state: bits must be 0 or 1");
    DenseTensor g({1, 2, 1});
    g[static_cast<std::size_t>(b)] = 1.0;
    m.gammas.push_back(std::move(g));
  }
  return m;
}

VidalMps random_raw_mps(std::size_t n, std::size_t chi, std::uint64_t seed) {
  require(n >= 2, ErrorCode::kArgument, "random MPS needs n >= 2");
  require(chi >= 1, ErrorCode::kArgument, "random MPS needs chi >= 1");
  VidalMps m;
  m.lambdas.resize(n + 1);
  for (std::size_t b = 0; b <= n; ++b) {
    const std::size_t d = bond_cap(n, chi, b);
    std::vector<double> w(d, 1.0);
    if (b > 0 && b < n) {
      Rng rng = Rng::stream(seed, {kTagMpsSpectrum, b});
      for (double& x : w) x = rng.uniform(0.05, 1.0);
      std::sort(w.begin(), w.end(), std::greater<>());
    }
    m.lambdas[b] = std::move(w);
  }
  for (std::size_t i = 0; i < n; ++i) {
    DenseTensor g({m.lambdas[i].size(), 2, m.lambdas[i + 1].size()});
    Rng rng = Rng::stream(seed, {kTagMpsTensor, i});
    for (cplx& v : g.data()) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      v = {re, im};
    }
    m.gammas.push_back(std::move(g));
  }
  const double scale = std::exp(-log_norm(m) / static_cast<double>(n));
  for (auto& g : m.gammas) g *= scale;
  return m;
}

VidalMps random_mps(std::size_t n, std::size_t chi, std::uint64_t seed) {
  VidalMps raw = random_raw_mps(n, chi, seed);
  for (auto& l : raw.lambdas) std::fill(l.begin(), l.end(), 1.0);
  VidalMps out = canonicalize(raw);
  out.log_norm_offset = 0.0;
  return out;
}

VidalMps canonicalize(const VidalMps& state) {
  state.validate();
  const std::size_t n = state.n_sites();
  double log_acc = 0.0;

  // Left sweep: A_i left-isometric, scale peeled into log_acc.
  std::vector<DenseTensor> a(n);
  RowMat carry = RowMat::Constant(1, 1, cplx(state.lambdas[0][0], 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor m = weighted(state.gammas[i], nullptr, &state.lambdas[i + 1]);
    const std::size_t l = m.extent(0), r = m.extent(2);
    const std::size_t k = static_cast<std::size_t>(carry.rows());
    RowMat t = carry * as_matrix(m, l, 2 * r);  // (k, 2r) == (2k, r) row-major
    const DenseTensor tt({k * 2, r}, std::vector<cplx>(t.data(), t.data() + t.size()));
    SvdFactorization f = trimmed_svd(tt, tt.extent(0) + tt.extent(1));
    const std::vector<double> s = normalized(f.s, log_acc);
    const std::size_t kk = s.size();
    a[i] = f.u.reshaped({k, 2, kk});
    carry = as_matrix(f.vdag, kk, r);
    for (std::size_t j = 0; j < kk; ++j) carry.row(static_cast<Eigen::Index>(j)) *= s[j];
  }
  // carry is now a unit-modulus 1x1 phase.
  a[n - 1] *= carry(0, 0);

  return from_left_orthogonal(std::move(a), state.log_norm_offset + log_acc);
}

VidalMps from_left_orthogonal(std::vector<DenseTensor> a, double log_norm_offset) {
  const std::size_t n = a.size();
  require(n >= 1, ErrorCode::kArgument, "from_left_orthogonal: empty chain");
  double log_acc = 0.0;
  // Right sweep: Schmidt values and right-isometric B_i = Gamma_i Lambda_{i+1}.
  VidalMps out;
  out.gammas.resize(n);
  out.lambdas.resize(n + 1);
  out.lambdas[n] = {1.0};
  out.lambdas[0] = {1.0};
  DenseTensor cur = a[n - 1];
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = cur.extent(0), r = cur.extent(2);
    SvdFactorization f = trimmed_svd(cur.reshaped({l, 2 * r}), l + 2 * r);
    std::vector<double> s = normalized(f.s, log_acc);
    const std::size_t kk = s.size();
    std::vector<double> inv_right(r);
    for (std::size_t c = 0; c < r; ++c) inv_right[c] = 1.0 / out.lambdas[i + 1][c];
    out.gammas[i] = weighted(f.vdag.reshaped({kk, 2, r}), nullptr, &inv_right);
    RowMat us = as_matrix(f.u, l, kk);
    for (std::size_t j = 0; j < kk; ++j) us.col(static_cast<Eigen::Index>(j)) *= s[j];
    const DenseTensor& prev = a[i - 1];
    const std::size_t pl = prev.extent(0);
    RowMat next = as_matrix(prev, pl * 2, l) * us;
    cur = detail::from_matrix(next, {pl, 2, kk});
    out.lambdas[i] = std::move(s);
  }
  if (n == 1) {
    const double nrm = cur.frobenius_norm();
    require(nrm > 0.0 && std::isfinite(nrm), ErrorCode::kDegenerateState,
            "canonicalize: state has zero or non-finite norm");
    cur *= 1.0 / nrm;
    log_acc += std::log(nrm);
  }
  std::vector<double> inv_right(cur.extent(2));
  for (std::size_t c = 0; c < inv_right.size(); ++c) inv_right[c] = 1.0 / out.lambdas[1][c];
  out.gammas[0] = weighted(cur, nullptr, &inv_right);
  out.log_norm_offset = log_norm_offset + log_acc;
  return out;
}

double log_norm(const VidalMps& state) {
  state.validate();
  double log_acc = 0.0;
  RowMat env = RowMat::Constant(1, 1, cplx(state.lambdas[0][0] * state.lambdas[0][0], 0.0));
  for (std::size_t i = 0; i < state.n_sites(); ++i) {
    const DenseTensor m = weighted(state.gammas[i], nullptr, &state.lambdas[i + 1]);
    RowMat next = RowMat::Zero(static_cast<Eigen::Index>(m.extent(2)),
                               static_cast<Eigen::Index>(m.extent(2)));
    for (std::size_t s = 0; s < 2; ++s) {
      const auto ms = phys_slice(m, s);
      next.noalias() += ms.adjoint() * (env * ms);
    }
    const double tr = next.trace().real();
    if (!(tr > 0.0)) return -std::numeric_limits<double>::infinity();
    env = next / tr;
    log_acc += std::log(tr);
  }
  return 0.5 * log_acc;
}

double norm(const VidalMps& state) { return std::exp(log_norm(state)); }

void normalize(VidalMps& state) {
  const double ln = log_norm(state);
  if (!std::isfinite(ln)) throw Error(ErrorCode::kDegenerateState, "normalize: state has zero norm");
  const double scale = std::exp(-ln / static_cast<double>(state.n_sites()));
  for (auto& g : state.gammas) g *= scale;
  state.log_norm_offset += ln;
}

cplx overlap(const VidalMps& a, const VidalMps& b) {
  require(a.n_sites() == b.n_sites(), ErrorCode::kArgument,
          "overlap: site counts differ (" + std::to_string(a.n_sites()) + " vs " +
              std::to_string(b.n_sites()) + ")");
  a.validate();
  b.validate();
  RowMat env = RowMat::Constant(1, 1, cplx(a.lambdas[0][0] * b.lambdas[0][0], 0.0));
  for (std::size_t i = 0; i < a.n_sites(); ++i) {
    const DenseTensor ma = weighted(a.gammas[i], nullptr, &a.lambdas[i + 1]);
    const DenseTensor mb = weighted(b.gammas[i], nullptr, &b.lambdas[i + 1]);
    RowMat next = RowMat::Zero(static_cast<Eigen::Index>(ma.extent(2)),
                               static_cast<Eigen::Index>(mb.extent(2)));
    for (std::size_t s = 0; s < 2; ++s) {
      next.noalias() += phys_slice(ma, s).adjoint() * (env * phys_slice(mb, s));
    }
    env = std::move(next);
  }
  return env(0, 0);
}

Statevector to_statevector(const VidalMps& state, std::size_t cap) {
  state.validate();
  const std::size_t n = state.n_sites();
  require(n <= cap, ErrorCode::kResource,
          "to_statevector: " + std::to_string(n) + " sites exceed the cap of " + std::to_string(cap));
  RowMat v = RowMat::Constant(1, 1, cplx(state.lambdas[0][0], 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor m = weighted(state.gammas[i], nullptr, &state.lambdas[i + 1]);
    const std::size_t l = m.extent(0), r = m.extent(2);
    RowMat next = v * as_matrix(m, l, 2 * r);
    // (D, 2r) row-major is (2D, r) with the new qubit as the low bit.
    v = Eigen::Map<RowMat>(next.data(), next.rows() * 2, static_cast<Eigen::Index>(r));
  }
  return Statevector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

EntanglementSpectrum entanglement_spectrum(const VidalMps& state, std::size_t bond) {
  require(bond >= 1 && bond < state.n_sites(), ErrorCode::kArgument,
          "bond " + std::to_string(bond) + " out of range [1, " +
              std::to_string(state.n_sites() - 1) + "]");
  EntanglementSpectrum out;
  out.approximate = canonical_distance(state).distance > kCanonicalSampleTolerance;
  const auto& lam = state.lambdas[bond];
  double total = 0.0;
  for (double x : lam) total += x * x;
  require(total > 0.0, ErrorCode::kDegenerateState, "bond has zero weight");
  for (double x : lam) {
    const double p = x * x / total;
    if (p <= 0.0) continue;
    out.levels.push_back(-std::log(p));
    out.entropy -= p * std::log(p);
  }
  std::sort(out.levels.begin(), out.levels.end());
  out.entropy = std::max(out.entropy, 0.0);
  return out;
}

double entanglement_entropy(const VidalMps& state, std::size_t bond) {
  return entanglement_spectrum(state, bond).entropy;
}

CanonicalReport canonical_distance(const VidalMps& state) {
  state.validate();
  const std::size_t n = state.n_sites();
  double scale2 = 1.0;
  const double ln = log_norm(state);
  if (std::isfinite(ln) && std::abs(std::exp(ln) - 1.0) > 1e-6) {
    scale2 = std::exp(-2.0 * ln / static_cast<double>(n));
  }
  CanonicalReport rep;
  rep.per_site_left_residual.resize(n);
  rep.per_site_right_residual.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& g = state.gammas[i];
    const DenseTensor av = weighted(g, &state.lambdas[i], nullptr);
    const DenseTensor bv = weighted(g, nullptr, &state.lambdas[i + 1]);
    const auto l = static_cast<Eigen::Index>(g.extent(0));
    const auto r = static_cast<Eigen::Index>(g.extent(2));
    RowMat left = RowMat::Zero(r, r);
    RowMat right = RowMat::Zero(l, l);
    for (std::size_t s = 0; s < 2; ++s) {
      const auto as = phys_slice(av, s);
      const auto bs = phys_slice(bv, s);
      left.noalias() += as.adjoint() * as;
      right.noalias() += bs * bs.adjoint();
    }
    left *= scale2;
    right *= scale2;
    left -= RowMat::Identity(r, r);
    right -= RowMat::Identity(l, l);
    rep.per_site_left_residual[i] = left.norm();
    rep.per_site_right_residual[i] = right.norm();
    total += rep.per_site_left_residual[i] + rep.per_site_right_residual[i];
  }
  rep.distance = total / (2.0 * static_cast<double>(n));
  return rep;
}

namespace {

std::vector<int> sample_one(const VidalMps& state, std::uint64_t seed, std::uint64_t draw) {
  const std::size_t n = state.n_sites();
  std::vector<int> bits(n);
  // Row vector of the contracted prefix L0 G0[s0] L1 ... G_i[s_i] L_{i+1}.
  RowMat v = RowMat::Constant(1, 1, cplx(state.lambdas[0][0], 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& g = state.gammas[i];
    const auto& lam = state.lambdas[i + 1];
    RowMat w[2];
    double p[2];
    for (std::size_t s = 0; s < 2; ++s) {
      w[s] = v * phys_slice(g, s);
      double acc = 0.0;
      for (Eigen::Index c = 0; c < w[s].cols(); ++c) {
        acc += std::norm(w[s](0, c)) * lam[static_cast<std::size_t>(c)] * lam[static_cast<std::size_t>(c)];
      }
      p[s] = acc;
    }
    const double total = p[0] + p[1];
    require(total > 0.0, ErrorCode::kDegenerateState, "sample: zero conditional weight");
    Rng rng = Rng::stream(seed, {kTagSample, draw, i});
    const int bit = rng.uniform() * total < p[0] ? 0 : 1;
    bits[i] = bit;
    v = w[bit] / std::sqrt(p[bit]);
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(0, c) *= lam[static_cast<std::size_t>(c)];
  }
  return bits;
}

void require_canonical(const VidalMps& state) {
  const double d = canonical_distance(state).distance;
  require(d <= kCanonicalSampleTolerance, ErrorCode::kPrecondition,
          "sampling needs a canonical state (distance " + std::to_string(d) + "); canonicalize first");
}

}  // namespace

std::vector<int> sample_bitstring(const VidalMps& state, std::uint64_t seed) {
  require_canonical(state);
  return sample_one(state, seed, 0);
}

std::vector<std::vector<int>> sample_bitstrings(const VidalMps& state, std::size_t count,
                                                std::uint64_t seed) {
  require_canonical(state);
  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sample_one(state, seed, k));
  return out;
}

}  // namespace ipmc
