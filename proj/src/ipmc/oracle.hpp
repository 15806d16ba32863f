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

#pragma once

#include <cstddef>
#include <vector>

#include "ipmc/circuits.hpp"
#include "ipmc/mps.hpp"
#include "ipmc/statevector.hpp"

namespace ipmc {

/// Applies one gate in place (no fusion).
void apply_gate(Statevector& sv, const Gate& gate);

/// Runs every layer exactly: single-qubit gates of a layer first, then its
/// two-qubit gates.
Statevector statevector_run(const Circuit& circuit, Statevector init,
                            std::size_t cap = kDefaultStatevectorCap);
Statevector statevector_run(const CompiledCircuit& circuit, Statevector init,
                            std::size_t cap = kDefaultStatevectorCap);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const Statevector& exact, const Statevector& approx);
double fidelity(const Statevector& exact, const VidalMps& approx);

/// Dense contraction of the MPS with an explicit rank-chi' projector on
/// every inner bond (onto its chi' largest weights). N <= 10.
Statevector dense_parallel_truncation(const VidalMps& state, std::size_t chi_prime);

/// out[k] = 2^{-n/2} sum_j exp(2 pi i j k / 2^n) in[j], indices with qubit 0
/// as most significant bit. n <= 12.
Statevector dft_reference(std::size_t n, const Statevector& input);

/// Relabels qubits: qubit q of `sv` becomes qubit perm[q] of the result.
Statevector permute_qubits(const Statevector& sv, const std::vector<std::size_t>& perm);

}  // namespace ipmc
