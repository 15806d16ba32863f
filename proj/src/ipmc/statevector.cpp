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

#include "ipmc/statevector.hpp"

#include <cmath>

#include "ipmc/error.hpp"

namespace ipmc {

Statevector::Statevector(std::size_t n, std::vector<cplx> amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
  require(n < 63 && amplitudes.size() == (std::size_t{1} << n), ErrorCode::kDimension,
          "statevector of " + std::to_string(n) + " qubits needs 2^n amplitudes");
}

Statevector Statevector::zero_state(std::size_t n, std::size_t cap) {
  return basis_state(n, 0, cap);
}

Statevector Statevector::basis_state(std::size_t n, std::size_t index, std::size_t cap) {
  require(n <= cap, ErrorCode::kResource,
          std::to_string(n) + " qubits exceed the statevector cap of " + std::to_string(cap));
  std::vector<cplx> amps(std::size_t{1} << n);
  require(index < amps.size(), ErrorCode::kArgument, "basis index out of range");
  amps[index] = 1.0;
  return Statevector(n, std::move(amps));
}

double Statevector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

cplx Statevector::inner(const Statevector& other) const {
  require(other.n_qubits == n_qubits, ErrorCode::kArgument, "inner: qubit counts differ");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) acc += std::conj(amplitudes[i]) * other.amplitudes[i];
  return acc;
}

}  // namespace ipmc
