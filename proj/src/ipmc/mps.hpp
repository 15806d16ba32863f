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
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ipmc/statevector.hpp"
#include "ipmc/tensor.hpp"

namespace ipmc {

/// Matrix-product state in Vidal form:
///
///   |psi> = sum  L0 G0[s0] L1 G1[s1] L2 ... G(N-1)[s(N-1)] LN |s0 ... s(N-1)>
///
/// gammas[i] has shape (chi_i, 2, chi_{i+1}) and lambdas[b] has length chi_b.
/// Bond b (1 <= b <= N-1) joins sites b-1 and b; lambdas[0] and lambdas[N]
/// are the trivial boundary weights (1). Scale factors removed by
/// canonicalize() accumulate in log_norm_offset, so the represented vector is
/// exp(log_norm_offset) times the contraction above.
struct VidalMps {
  std::vector<DenseTensor> gammas;
  std::vector<std::vector<double>> lambdas;
  double log_norm_offset = 0.0;

  std::size_t n_sites() const noexcept { return gammas.size(); }
  std::size_t bond_dim(std::size_t b) const { return lambdas.at(b).size(); }
  std::size_t max_bond_dim() const;
  std::vector<std::size_t> bond_dims() const;

  /// Throws kShape/kArgument when the structural invariants are broken.
  void validate() const;
};

struct CanonicalReport {
  double distance = 0.0;
  std::vector<double> per_site_left_residual;
  std::vector<double> per_site_right_residual;
};

struct EntanglementSpectrum {
  std::vector<double> levels;  ///< xi = -ln(lambda^2), ascending
  double entropy = 0.0;
  /// Set when the state was not canonical, so Lambda^2 is not the Schmidt
  /// spectrum of the cut.
  bool approximate = false;
};

VidalMps product_state(const std::vector<int>& bits);

/// Random canonical state: real and imaginary parts of every Gamma entry drawn
/// from [-1, 1), then canonicalized and normalized.
VidalMps random_mps(std::size_t n, std::size_t chi, std::uint64_t seed);

/// Same Gamma draws as random_mps, with random descending weights in
/// [0.05, 1) on the inner bonds and no canonicalization: a generic
/// non-canonical state. Every Gamma is scaled by the same factor so the norm
/// is 1.
VidalMps random_raw_mps(std::size_t n, std::size_t chi, std::uint64_t seed);

/// Two SVD sweeps (left-to-right orthogonalization, then right-to-left Schmidt
/// decomposition). Output norm is 1; the extracted scale goes to
/// log_norm_offset. Zero-norm input throws kDegenerateState.
VidalMps canonicalize(const VidalMps& state);

/// Vidal form from a left-orthogonal chain: sites[0..N-2] are left
/// isometries (l, 2, r) and sites[N-1] carries the whole norm. Runs the
/// right-to-left Schmidt sweep of canonicalize(); the norm is extracted into
/// log_norm_offset.
VidalMps from_left_orthogonal(std::vector<DenseTensor> sites, double log_norm_offset);

/// Norm of the contraction, excluding log_norm_offset.
double norm(const VidalMps& state);
/// Natural log of norm(); stays finite for norms below the double range.
double log_norm(const VidalMps& state);
/// Scales every Gamma uniformly to unit norm and moves the factor into log_norm_offset.
void normalize(VidalMps& state);

/// <a|b>, excluding log_norm_offset of either side.
cplx overlap(const VidalMps& a, const VidalMps& b);

/// Dense amplitudes, excluding log_norm_offset. n_sites > cap throws kResource.
Statevector to_statevector(const VidalMps& state, std::size_t cap = kDefaultStatevectorCap);

EntanglementSpectrum entanglement_spectrum(const VidalMps& state, std::size_t bond);
double entanglement_entropy(const VidalMps& state, std::size_t bond);

/// Averaged isometry residual. If the norm differs from 1 by more than 1e-6
/// the measurement runs on a copy with every Gamma scaled by norm^(-1/N).
CanonicalReport canonical_distance(const VidalMps& state);

/// One bit string drawn from |amplitude|^2 by a left-to-right conditional
/// sweep. Requires canonical_distance <= 1e-6 (kPrecondition otherwise).
std::vector<int> sample_bitstring(const VidalMps& state, std::uint64_t seed);
/// `count` draws; draw k uses the substreams of (seed, k).
std::vector<std::vector<int>> sample_bitstrings(const VidalMps& state, std::size_t count,
                                                std::uint64_t seed);

/// Binary snapshot: "IPMCMPS\0", u32 version, u64 N, N+1 u64 bond dims,
/// Gammas as little-endian complex doubles, Lambdas as doubles, then
/// log_norm_offset.
void write_snapshot(const VidalMps& state, std::ostream& out);
VidalMps read_snapshot(std::istream& in);
void save_snapshot(const VidalMps& state, const std::string& path);
VidalMps load_snapshot(const std::string& path);

}  // namespace ipmc
