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

#include "ipmc/tensor.hpp"

namespace ipmc {

inline constexpr std::size_t kDefaultStatevectorCap = 26;

/// Dense amplitudes of an n-qubit state. Basis index bit (n-1-k) is qubit k,
/// so qubit 0 is the most significant bit.
struct Statevector {
  std::size_t n_qubits = 0;
  std::vector<cplx> amplitudes;

  Statevector() = default;
  Statevector(std::size_t n, std::vector<cplx> amps);

  /// |0...0>.
  static Statevector zero_state(std::size_t n, std::size_t cap = kDefaultStatevectorCap);
  static Statevector basis_state(std::size_t n, std::size_t index,
                                 std::size_t cap = kDefaultStatevectorCap);

  std::size_t dim() const noexcept { return amplitudes.size(); }
  double norm() const;
  cplx inner(const Statevector& other) const;  ///< <this|other>
};

}  // namespace ipmc
