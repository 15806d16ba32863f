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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ipmc/tensor.hpp"

namespace ipmc {

/// One- or two-qubit gate. For two-qubit gates the 4x4 matrix acts on the
/// basis |t0 t1> with index 2*s(t0) + s(t1), where t0 = targets[0].
struct Gate {
  int arity = 1;
  std::vector<cplx> matrix;  ///< row-major 2x2 or 4x4
  std::array<std::size_t, 2> targets{0, 0};
  std::string label;
  std::vector<double> params;

  bool is_pair() const noexcept { return arity == 2; }
};

/// A circuit layer. All single-qubit gates act first, then all two-qubit
/// gates. A qubit appears at most once among each kind.
struct Layer {
  std::vector<Gate> gates;
  std::string tag;  ///< structural role, e.g. "odd", "even", "dimer", "A".."D"

  std::size_t pair_count() const;
};

enum class Geometry { kLine, kGrid };

struct Circuit {
  std::string family;
  std::size_t n_qubits = 0;
  Geometry geometry = Geometry::kLine;
  std::size_t lx = 0;  ///< grid only
  std::size_t ly = 0;  ///< grid only
  std::uint64_t seed = 0;
  std::vector<Layer> layers;

  std::size_t physical_depth() const noexcept { return layers.size(); }
  std::size_t gate_count() const;
};

/// Circuit whose two-qubit gates all act on neighbouring sites of the MPS path.
struct CompiledCircuit {
  Circuit circuit;
  std::size_t compiled_depth = 0;
  std::vector<std::size_t> provenance;  ///< compiled layer -> physical layer
};

/// Uniform ranges for random gate parameters, each drawn from [0, max) except
/// alpha, drawn from [0, alpha_max].
struct AngleRanges {
  double alpha_max;
  double theta_max;
  double phi_max;
  double eswap_max;
};
AngleRanges default_angle_ranges();

/// Matrix of a named gate.
///   1q: "i", "h", "x", "z", "su2"(alpha, theta, phi)
///   2q: "i2", "cz", "swap", "eswap"(theta), "singlet", "cp"(phi), "cpswap"(phi)
/// su2 = exp[-i theta (sin a cos p X + sin a sin p Y + cos a Z)];
/// eswap = exp(-i theta SWAP / 2); singlet maps |00> to (|01> - |10>)/sqrt2;
/// cp = diag(1, 1, 1, e^{i phi}); cpswap = SWAP * cp.
std::vector<cplx> standard_gate_matrix(const std::string& name, const std::vector<double>& params);
int standard_gate_arity(const std::string& name);
Gate standard_gate(const std::string& name, std::vector<std::size_t> targets,
                   std::vector<double> params = {});

/// The 4x4 matrix for swapped target order: SWAP * m * SWAP.
std::vector<cplx> reversed_pair_matrix(const std::vector<cplx>& m);

/// Throws kLayerValidation on overlapping gates or bad targets.
void validate_layer(const Layer& layer, std::size_t n_qubits);
void validate_circuit(const Circuit& circuit);

Circuit rqc_1d(std::size_t n, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges = default_angle_ranges());
/// Layer 0 prepares singlet dimers; layers 1..d carry eSWAP gates, so the
/// circuit has d + 1 layers.
Circuit pqc_1d(std::size_t n, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges = default_angle_ranges());
Circuit rqc_2d(std::size_t lx, std::size_t ly, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges = default_angle_ranges());
Circuit pqc_2d(std::size_t lx, std::size_t ly, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges = default_angle_ranges());

/// Lattice site (x, y) has qubit label x*ly + y. Returns path[label], the
/// position on the column-serpentine MPS path.
std::vector<std::size_t> snake_path(std::size_t lx, std::size_t ly);

/// Line circuits map 1:1 onto compiled layers.
CompiledCircuit compile_1d(const Circuit& circuit);

/// Rewrites an ABCD-structured grid circuit onto the MPS path: A and B layers
/// are relabelled, each C+D pair becomes a SWAP network of 3(ly-1)+2 layers.
/// The output acts on path positions with every qubit back at its own
/// position at the end of each block.
CompiledCircuit recompile_2d(const Circuit& circuit, const std::vector<std::size_t>& path);

/// Number of layers holding at least one two-qubit gate.
std::size_t compiled_depth(const CompiledCircuit& c);
std::size_t count_pair_layers(const Circuit& c);

/// Textbook QFT with long-range controlled phases and final reversal swaps.
Circuit qft_textbook(std::size_t n);
/// Nearest-neighbour QFT: qubit i is hadamarded at position 0, then moved to
/// the far end by fused controlled-phase+SWAP gates. The order reversal of the
/// moves replaces the final swaps. Packed into layers as soon as possible.
CompiledCircuit qft_circuit(std::size_t n);

/// Packs gates (in program order) into the earliest layers respecting the
/// per-qubit order and the singles-before-pairs layer rule.
std::vector<Layer> schedule_asap(const std::vector<Gate>& program, std::size_t n_qubits);

/// Line-oriented text form. Header lines start with '#', then one line per
/// gate: "layer label t0 [t1] params...". Round-trips exactly.
void write_circuit(const Circuit& c, std::ostream& out);
Circuit read_circuit(std::istream& in);

}  // namespace ipmc
