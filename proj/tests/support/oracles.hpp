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

// Brute-force references used by the test suites. Nothing here calls into the
// library's contraction, SVD or gate-application code.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ipmc/circuits.hpp"
#include "ipmc/mps.hpp"

namespace ipmc::testing {

using Vec = std::vector<cplx>;

/// Row-major (m x k) * (k x n) by explicit loops.
Vec naive_matmul(const Vec& a, const Vec& b, std::size_t m, std::size_t k, std::size_t n);

/// Kronecker product of row-major square matrices.
Vec kron(const Vec& a, std::size_t da, const Vec& b, std::size_t db);

/// Full 2^n x 2^n operator of a gate on the given qubits (qubit 0 = MSB).
Vec embed_gate(const Gate& g, std::size_t n);

/// Applies a dense 2^n operator to a vector.
Vec apply_dense(const Vec& op, const Vec& psi);

/// Runs a circuit by full-matrix multiplication (n <= 10), singles first
/// within each layer.
Vec dense_run(const Circuit& c, Vec psi);

/// Amplitudes of a Vidal MPS by explicit index loops, without the log-norm
/// offset.
Vec mps_amplitudes(const VidalMps& m);

/// The projected state: every inner bond keeps its chi' largest weights
/// (ties to the lower index), others are zeroed.
Vec projected_amplitudes(const VidalMps& m, std::size_t chi_prime);

/// Squared Schmidt coefficients across the cut after `left` qubits, from the
/// eigenvalues of the reduced density matrix, descending.
std::vector<double> schmidt_weights(const Vec& psi, std::size_t n, std::size_t left);

/// Haar-like random unitary of dimension d via QR.
Vec random_unitary(std::size_t d, std::uint64_t seed);

/// out[k] = 2^{-n/2} sum_j exp(2 pi i j k / 2^n) in[j].
Vec naive_dft(const Vec& in);

double norm2(const Vec& v);
cplx inner(const Vec& a, const Vec& b);
double distance2(const Vec& a, const Vec& b);
/// |<a|b>|^2 / (<a|a><b|b>).
double state_fidelity(const Vec& a, const Vec& b);

}  // namespace ipmc::testing
