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

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "ipmc/circuits.hpp"
#include "ipmc/mps.hpp"
#include "ipmc/parallel.hpp"

namespace ipmc {

/// Per-bond truncation record and the bounds derived from it. Entry k of the
/// per-bond lists refers to bond k+1.
struct TruncationReport {
  std::vector<double> per_bond_eps;
  std::vector<double> per_bond_nu;
  std::vector<std::size_t> original_dims;
  std::vector<std::size_t> kept_dims;
  double global_eps = 0.0;
  double fidelity_lb_tight = 1.0;  ///< 1 - 2 eps
  double fidelity_lb_loose = 1.0;  ///< 1 - 2 sum sqrt(eps_i)
  double norm_lb = 1.0;            ///< 1 - sqrt(2 eps)
  double norm_ub = 1.0;
  double stabilized_lb = 1.0;      ///< (1 - sqrt(2 eps)) prod nu_i
  double stabilized_ub = 1.0;      ///< prod nu_i

  bool truncated() const noexcept { return global_eps > 0.0; }
};

/// Fills nu and every derived bound from per-bond eps values.
TruncationReport make_truncation_report(std::vector<double> per_bond_eps);

/// Instrumentation of one compiled layer.
struct StepTrace {
  std::size_t layer_index = 0;
  double norm_pre = 1.0;    ///< norm entering the truncation
  double norm_n = 1.0;      ///< norm after truncation
  double norm_nstar = 1.0;  ///< norm after stabilization (== norm_n when off)
  TruncationReport report;
  bool truncated = false;
  bool compressed = false;  ///< IPMC (or a truncating cut) ran on this layer
  double canonical_distance_before = 0.0;  ///< entering the truncation
  double canonical_distance_after = 0.0;
  std::size_t parallel_rounds = 0;
  std::size_t two_site_updates = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct EngineOptions {
  const RoundExecutor* executor = nullptr;  ///< serial when null
  bool stabilize = true;
  /// Measure norms and canonical distances. Never counted in elapsed.
  bool diagnostics = true;

  const RoundExecutor& exec() const { return executor ? *executor : RoundExecutor::serial(); }
};

inline constexpr std::size_t kNoTruncation = std::numeric_limits<std::size_t>::max();

/// Applies a 2x2 unitary to site `site`.
void apply_single_site(VidalMps& state, const std::vector<cplx>& u, std::size_t site);

/// Two-site update on bond `bond` (joining sites bond-1 and bond). `gate` is
/// a 4x4 unitary on |s_{bond-1} s_bond>; nullopt means identity (a trivial
/// simple update that only regauges). Singular values below 1e-14 s_max are
/// dropped; with chi_max the bond is also cut to chi_max values and the
/// discarded squared weight is returned.
double tebd_two_site(VidalMps& state, const std::optional<std::vector<cplx>>& gate,
                     std::size_t bond, std::optional<std::size_t> chi_max = std::nullopt);

/// Keeps the chi_prime largest weights on every bond at once. Phase one picks
/// keep-sets per bond (read only); phase two projects each Gamma onto the
/// keep-sets of its two bonds. eps_i is the dropped share of the bond's total
/// squared weight.
TruncationReport parallel_truncate(VidalMps& state, std::size_t chi_prime,
                                   const RoundExecutor& exec = RoundExecutor::serial());

/// Multiplies each Lambda by its nu_i (Gamma untouched).
void scale_bonds(VidalMps& state, const TruncationReport& report,
                 const RoundExecutor& exec = RoundExecutor::serial());
/// scale_bonds, then returns the resulting norm n*.
double stabilize_norm(VidalMps& state, const TruncationReport& report,
                      const RoundExecutor& exec = RoundExecutor::serial());

/// Identity-gate updates on all odd bonds, barrier, then all even bonds.
void ptsu_step(VidalMps& state, const RoundExecutor& exec = RoundExecutor::serial());

/// Truncate to chi, stabilize (if enabled), then g PtSU steps. Counts
/// 1 + g rounds.
StepTrace ipmc(VidalMps& state, std::size_t chi, std::size_t g, const EngineOptions& opts = {});

/// One layer of the parallel engine: all gates in one round (single-qubit
/// gates fused into their pair gates), then IPMC when a bond exceeds chi.
StepTrace ptebd_apply_layer(VidalMps& state, const Layer& layer, std::size_t chi, std::size_t g,
                            const EngineOptions& opts = {});

/// One layer of the sequential baseline on a canonical state: gates in
/// ascending bond order on a mixed-canonical chain, each followed by an SVD
/// cut to chi and renormalization; the Vidal form is rebuilt at the end.
StepTrace sequential_apply_layer(VidalMps& state, const Layer& layer, std::size_t chi,
                                 const EngineOptions& opts = {});

/// Nearest-neighbour form of a pair gate: bond index and the matrix in
/// ascending site order. Throws kLayerValidation when not adjacent.
struct OrientedPair {
  std::size_t bond;
  std::vector<cplx> matrix;
};
OrientedPair orient_pair(const Gate& g, std::size_t n_sites);

}  // namespace ipmc
