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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ipmc {

/// Seedable 64-bit generator (mt19937_64) with deterministic stream splitting.
///
/// Every independent consumer of randomness (a site of a random MPS, a gate of
/// a random circuit, a sample draw) derives its own substream from the run
/// seed and a list of stream keys, e.g. `Rng::stream(seed, {kGateTag, layer,
/// qubit})`. Substreams are keyed by position rather than by consumption
/// order, so parallel and sequential executions draw identical values.
///
/// Key derivation: h = splitmix64(seed); for each key k: h = splitmix64(h ^ k).
/// The engine is seeded with h. Uniform doubles use the top 53 bits of each
/// output, which is platform independent (unlike std::uniform_real_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream tags. Stable values: changing them changes every seeded output.
inline constexpr std::uint64_t kTagMpsTensor = 0x4d505354;   // "MPST"
inline constexpr std::uint64_t kTagMpsSpectrum = 0x4d505350; // "MPSP"
inline constexpr std::uint64_t kTagGate = 0x47415445;        // "GATE"
inline constexpr std::uint64_t kTagSample = 0x53414d50;      // "SAMP"
inline constexpr std::uint64_t kTagInstance = 0x494e5354;    // "INST"

}  // namespace ipmc
