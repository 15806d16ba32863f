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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace ipmc::testing {

Vec naive_matmul(const Vec& a, const Vec& b, std::size_t m, std::size_t k, std::size_t n) {
  Vec c(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a[i * k + t] * b[t * n + j];
      c[i * n + j] = s;
    }
  return c;
}

Vec kron(const Vec& a, std::size_t da, const Vec& b, std::size_t db) {
  const std::size_t d = da * db;
  Vec out(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out[(i * db + k) * d + (j * db + l)] = a[i * da + j] * b[k * db + l];
  return out;
}

Vec embed_gate(const Gate& g, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Vec op(dim * dim);
  const auto bit = [n](std::size_t x, std::size_t q) { return (x >> (n - 1 - q)) & 1u; };
  for (std::size_t row = 0; row < dim; ++row)
    for (std::size_t col = 0; col < dim; ++col) {
      bool rest_equal = true;
      for (std::size_t q = 0; q < n; ++q) {
        const bool target = q == g.targets[0] || (g.arity == 2 && q == g.targets[1]);
        if (!target && bit(row, q) != bit(col, q)) rest_equal = false;
      }
      if (!rest_equal) continue;
      if (g.arity == 1) {
        op[row * dim + col] = g.matrix[bit(row, g.targets[0]) * 2 + bit(col, g.targets[0])];
      } else {
        const std::size_t r = 2 * bit(row, g.targets[0]) + bit(row, g.targets[1]);
        const std::size_t c = 2 * bit(col, g.targets[0]) + bit(col, g.targets[1]);
        op[row * dim + col] = g.matrix[r * 4 + c];
      }
    }
  return op;
}

Vec apply_dense(const Vec& op, const Vec& psi) { return naive_matmul(op, psi, psi.size(), psi.size(), 1); }

Vec dense_run(const Circuit& c, Vec psi) {
  if (c.n_qubits > 10) throw std::invalid_argument("dense_run: too many qubits");
  for (const Layer& layer : c.layers) {
    for (const Gate& g : layer.gates)
      if (g.arity == 1) psi = apply_dense(embed_gate(g, c.n_qubits), psi);
    for (const Gate& g : layer.gates)
      if (g.arity == 2) psi = apply_dense(embed_gate(g, c.n_qubits), psi);
  }
  return psi;
}

Vec mps_amplitudes(const VidalMps& m) {
  const std::size_t n = m.n_sites();
  const std::size_t dim = std::size_t{1} << n;
  Vec out(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    // row vector over the left bond of the current site
    Vec row{m.lambdas[0][0]};
    for (std::size_t i = 0; i < n; ++i) {
      const int s = static_cast<int>((x >> (n - 1 - i)) & 1u);
      const DenseTensor& g = m.gammas[i];
      const std::size_t l = g.extent(0), r = g.extent(2);
      Vec next(r, 0.0);
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < r; ++b) next[b] += row[a] * g[(a * 2 + s) * r + b];
      for (std::size_t b = 0; b < r; ++b) next[b] *= m.lambdas[i + 1][b];
      row = std::move(next);
    }
    out[x] = row[0];
  }
  return out;
}

Vec projected_amplitudes(const VidalMps& m, std::size_t chi_prime) {
  VidalMps p = m;
  for (std::size_t b = 1; b < p.n_sites(); ++b) {
    auto& lam = p.lambdas[b];
    std::vector<std::size_t> idx(lam.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return lam[x] > lam[y]; });
    for (std::size_t k = chi_prime; k < idx.size(); ++k) lam[idx[k]] = 0.0;
  }
  return mps_amplitudes(p);
}

std::vector<double> schmidt_weights(const Vec& psi, std::size_t n, std::size_t left) {
  const std::size_t dl = std::size_t{1} << left, dr = std::size_t{1} << (n - left);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dl));
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t j = 0; j < dl; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < dr; ++k) s += psi[i * dr + k] * std::conj(psi[j * dr + k]);
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  std::vector<double> w(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

Vec random_unitary(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const auto di = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd z(di, di);
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index j = 0; j < di; ++j) z(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Vec out(d * d);
  for (Eigen::Index i = 0; i < di; ++i)
    for (Eigen::Index j = 0; j < di; ++j) out[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] = q(i, j);
  return out;
}

Vec naive_dft(const Vec& in) {
  const std::size_t dim = in.size();
  const double pi = std::acos(-1.0);
  Vec out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      s += std::polar(1.0, 2.0 * pi * static_cast<double>((j * k) % dim) / static_cast<double>(dim)) * in[j];
    out[k] = s / std::sqrt(static_cast<double>(dim));
  }
  return out;
}

double norm2(const Vec& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

cplx inner(const Vec& a, const Vec& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double distance2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return s;
}

double state_fidelity(const Vec& a, const Vec& b) { return std::norm(inner(a, b)) / (norm2(a) * norm2(b)); }

}  // namespace ipmc::testing
