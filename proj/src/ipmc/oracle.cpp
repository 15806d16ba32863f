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

#include "ipmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ipmc/error.hpp"

namespace ipmc {
namespace {

constexpr std::size_t kTruncationOracleCap = 10;
constexpr std::size_t kDftCap = 12;

std::size_t bit_of(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

}  // namespace

void apply_gate(Statevector& sv, const Gate& gate) {
  const std::size_t n = sv.n_qubits;
  auto& amp = sv.amplitudes;
  const auto& u = gate.matrix;
  if (!gate.is_pair()) {
    const std::size_t q = gate.targets[0];
    require(q < n, ErrorCode::kArgument, "gate target outside the register");
    const std::size_t m = bit_of(n, q);
    for (std::size_t i = 0; i < amp.size(); ++i) {
      if (i & m) continue;
      const cplx a0 = amp[i], a1 = amp[i | m];
      amp[i] = u[0] * a0 + u[1] * a1;
      amp[i | m] = u[2] * a0 + u[3] * a1;
    }
    return;
  }
  const std::size_t qa = gate.targets[0], qb = gate.targets[1];
  require(qa < n && qb < n && qa != qb, ErrorCode::kArgument, "gate targets invalid");
  const std::size_t ma = bit_of(n, qa), mb = bit_of(n, qb);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (i & (ma | mb)) continue;
    const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
    cplx v[4];
    for (std::size_t k = 0; k < 4; ++k) v[k] = amp[idx[k]];
    for (std::size_t r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < 4; ++c) acc += u[r * 4 + c] * v[c];
      amp[idx[r]] = acc;
    }
  }
}

Statevector statevector_run(const Circuit& circuit, Statevector init, std::size_t cap) {
  require(circuit.n_qubits <= cap, ErrorCode::kResource,
          std::to_string(circuit.n_qubits) + " qubits exceed the statevector cap of " + std::to_string(cap));
  require(init.n_qubits == circuit.n_qubits, ErrorCode::kArgument,
          "initial state and circuit differ in qubit count");
  for (const Layer& layer : circuit.layers) {
    for (const Gate& g : layer.gates)
      if (!g.is_pair()) apply_gate(init, g);
    for (const Gate& g : layer.gates)
      if (g.is_pair()) apply_gate(init, g);
  }
  return init;
}

Statevector statevector_run(const CompiledCircuit& circuit, Statevector init, std::size_t cap) {
  return statevector_run(circuit.circuit, std::move(init), cap);
}

double fidelity(const Statevector& exact, const Statevector& approx) {
  require(exact.n_qubits == approx.n_qubits, ErrorCode::kArgument, "fidelity: qubit counts differ");
  const double na = exact.norm(), nb = approx.norm();
  require(na > 0.0 && nb > 0.0, ErrorCode::kDegenerateState, "fidelity: zero-norm state");
  const double f = std::norm(exact.inner(approx)) / (na * na * nb * nb);
  return std::min(f, 1.0 + 1e-12);
}

double fidelity(const Statevector& exact, const VidalMps& approx) {
  require(exact.n_qubits == approx.n_sites(), ErrorCode::kArgument, "fidelity: qubit counts differ");
  return fidelity(exact, to_statevector(approx));
}

Statevector dense_parallel_truncation(const VidalMps& state, std::size_t chi_prime) {
  const std::size_t n = state.n_sites();
  require(n <= kTruncationOracleCap, ErrorCode::kResource,
          "dense_parallel_truncation supports at most 10 sites");
  require(chi_prime >= 1, ErrorCode::kArgument, "chi_prime must be >= 1");
  state.validate();
  // psi[(sigma prefix), bond index] built site by site; after bond b the
  // diagonal projector onto its chi' largest weights is applied.
  std::vector<cplx> psi{state.lambdas[0][0]};
  std::size_t rows = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& g = state.gammas[i];
    const std::size_t l = g.extent(0), r = g.extent(2);
    std::vector<cplx> next(rows * 2 * r, 0.0);
    for (std::size_t p = 0; p < rows; ++p)
      for (std::size_t a = 0; a < l; ++a) {
        const cplx w = psi[p * l + a];
        if (w == 0.0) continue;
        for (std::size_t s = 0; s < 2; ++s)
          for (std::size_t c = 0; c < r; ++c) next[(p * 2 + s) * r + c] += w * g[(a * 2 + s) * r + c];
      }
    rows *= 2;
    const auto& lam = state.lambdas[i + 1];
    std::vector<double> proj(r, 1.0);
    if (i + 1 < n && r > chi_prime) {
      // Projector: rank by (weight desc, index asc), keep the first chi'.
      std::vector<std::pair<double, std::size_t>> order;
      for (std::size_t c = 0; c < r; ++c) order.push_back({-lam[c], c});
      std::sort(order.begin(), order.end());
      std::fill(proj.begin(), proj.end(), 0.0);
      for (std::size_t k = 0; k < chi_prime; ++k) proj[order[k].second] = 1.0;
    }
    for (std::size_t p = 0; p < rows; ++p)
      for (std::size_t c = 0; c < r; ++c) next[p * r + c] *= lam[c] * proj[c];
    psi = std::move(next);
  }
  return Statevector(n, std::move(psi));
}

Statevector dft_reference(std::size_t n, const Statevector& input) {
  require(n <= kDftCap, ErrorCode::kResource, "dft_reference supports at most 12 qubits");
  require(input.n_qubits == n, ErrorCode::kArgument, "dft_reference: qubit count mismatch");
  const std::size_t dim = std::size_t{1} << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<cplx> out(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t phase = (j * k) % dim;
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(dim);
      acc += std::polar(1.0, ang) * input.amplitudes[j];
    }
    out[k] = acc * scale;
  }
  return Statevector(n, std::move(out));
}

Statevector permute_qubits(const Statevector& sv, const std::vector<std::size_t>& perm) {
  const std::size_t n = sv.n_qubits;
  require(perm.size() == n, ErrorCode::kArgument, "permutation size mismatch");
  std::vector<cplx> out(sv.dim());
  for (std::size_t i = 0; i < sv.dim(); ++i) {
    std::size_t j = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (i & bit_of(n, q)) j |= bit_of(n, perm[q]);
    out[j] = sv.amplitudes[i];
  }
  return Statevector(n, std::move(out));
}

}  // namespace ipmc
