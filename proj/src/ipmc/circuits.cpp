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

#include "ipmc/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ipmc/error.hpp"
#include "ipmc/rng.hpp"

namespace ipmc {
namespace {

constexpr double kUnitaryTolerance = 1e-10;
const cplx kI{0.0, 1.0};

void require_params(const std::string& name, const std::vector<double>& params, std::size_t n) {
  require(params.size() == n, ErrorCode::kArgument,
          "gate " + name + " takes " + std::to_string(n) + " parameter(s), got " +
              std::to_string(params.size()));
  for (double p : params) {
    require(std::isfinite(p), ErrorCode::kArgument, "gate " + name + ": non-finite parameter");
  }
}

bool is_unitary(const std::vector<cplx>& m, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += std::conj(m[k * d + i]) * m[k * d + j];
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > kUnitaryTolerance) return false;
    }
  }
  return true;
}

Gate random_su2(std::size_t q, std::size_t layer, std::uint64_t seed, const AngleRanges& r) {
  Rng rng = Rng::stream(seed, {kTagGate, layer, q, 1});
  // alpha is closed on both ends: scale a 53-bit draw by 1/(2^53 - 1).
  const double alpha = static_cast<double>(rng.next_u64() >> 11) / 9007199254740991.0 * r.alpha_max;
  const double theta = rng.uniform(0.0, r.theta_max);
  const double phi = rng.uniform(0.0, r.phi_max);
  return standard_gate("su2", {q}, {alpha, theta, phi});
}

Gate random_eswap(std::size_t a, std::size_t b, std::size_t layer, std::uint64_t seed,
                  const AngleRanges& r) {
  Rng rng = Rng::stream(seed, {kTagGate, layer, a, 2});
  return standard_gate("eswap", {a, b}, {rng.uniform(0.0, r.eswap_max)});
}

std::size_t grid_label(std::size_t lx, std::size_t ly, std::size_t x, std::size_t y) {
  (void)lx;
  return x * ly + y;
}

// Two-qubit pairs of grid layer kind A, B, C or D.
std::vector<std::array<std::size_t, 2>> grid_pairs(std::size_t lx, std::size_t ly, char kind) {
  std::vector<std::array<std::size_t, 2>> pairs;
  if (kind == 'A' || kind == 'B') {
    const std::size_t y0 = kind == 'A' ? 0 : 1;
    for (std::size_t x = 0; x < lx; ++x)
      for (std::size_t y = y0; y + 1 < ly; y += 2)
        pairs.push_back({grid_label(lx, ly, x, y), grid_label(lx, ly, x, y + 1)});
  } else {
    const std::size_t x0 = kind == 'C' ? 0 : 1;
    for (std::size_t x = x0; x + 1 < lx; x += 2)
      for (std::size_t y = 0; y < ly; ++y)
        pairs.push_back({grid_label(lx, ly, x, y), grid_label(lx, ly, x + 1, y)});
  }
  return pairs;
}

}  // namespace

std::size_t Layer::pair_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_pair(); }));
}

std::size_t Circuit::gate_count() const {
  std::size_t c = 0;
  for (const auto& l : layers) c += l.gates.size();
  return c;
}

AngleRanges default_angle_ranges() {
  return {std::numbers::pi, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
}

int standard_gate_arity(const std::string& name) {
  if (name == "i" || name == "h" || name == "x" || name == "z" || name == "su2") return 1;
  if (name == "i2" || name == "cz" || name == "swap" || name == "eswap" || name == "singlet" ||
      name == "cp" || name == "cpswap") {
    return 2;
  }
  fail(ErrorCode::kArgument, "unknown gate '" + name + "'");
}

std::vector<cplx> standard_gate_matrix(const std::string& name, const std::vector<double>& params) {
  const double r2 = 1.0 / std::sqrt(2.0);
  if (name == "i") {
    require_params(name, params, 0);
    return {1.0, 0.0, 0.0, 1.0};
  }
  if (name == "h") {
    require_params(name, params, 0);
    return {r2, r2, r2, -r2};
  }
  if (name == "x") {
    require_params(name, params, 0);
    return {0.0, 1.0, 1.0, 0.0};
  }
  if (name == "z") {
    require_params(name, params, 0);
    return {1.0, 0.0, 0.0, -1.0};
  }
  if (name == "su2") {
    require_params(name, params, 3);
    const double a = params[0], t = params[1], p = params[2];
    const double nx = std::sin(a) * std::cos(p), ny = std::sin(a) * std::sin(p), nz = std::cos(a);
    const double c = std::cos(t), s = std::sin(t);
    // cos t I - i sin t (n . sigma)
    return {cplx(c, -s * nz), cplx(-s * ny, -s * nx), cplx(s * ny, -s * nx), cplx(c, s * nz)};
  }
  std::vector<cplx> m(16, 0.0);
  auto set = [&m](std::size_t r, std::size_t c, cplx v) { m[r * 4 + c] = v; };
  if (name == "i2") {
    require_params(name, params, 0);
    for (std::size_t k = 0; k < 4; ++k) set(k, k, 1.0);
  } else if (name == "cz") {
    require_params(name, params, 0);
    set(0, 0, 1.0), set(1, 1, 1.0), set(2, 2, 1.0), set(3, 3, -1.0);
  } else if (name == "swap") {
    require_params(name, params, 0);
    set(0, 0, 1.0), set(1, 2, 1.0), set(2, 1, 1.0), set(3, 3, 1.0);
  } else if (name == "eswap") {
    require_params(name, params, 1);
    // SWAP^2 = I, so exp(-i t P / 2) = cos(t/2) I - i sin(t/2) P.
    const cplx c = std::cos(params[0] / 2.0), s = -kI * std::sin(params[0] / 2.0);
    set(0, 0, c + s), set(3, 3, c + s);
    set(1, 1, c), set(2, 2, c), set(1, 2, s), set(2, 1, s);
  } else if (name == "singlet") {
    require_params(name, params, 0);
    // (Z x I)(I x X) CNOT (H x I): |00> -> (|01> - |10>)/sqrt2, completed to
    // an orthogonal matrix.
    set(0, 0, 0.0), set(1, 0, r2), set(2, 0, -r2), set(3, 0, 0.0);
    set(0, 1, r2), set(1, 1, 0.0), set(2, 1, 0.0), set(3, 1, -r2);
    set(0, 2, 0.0), set(1, 2, r2), set(2, 2, r2), set(3, 2, 0.0);
    set(0, 3, r2), set(1, 3, 0.0), set(2, 3, 0.0), set(3, 3, r2);
  } else if (name == "cp") {
    require_params(name, params, 1);
    set(0, 0, 1.0), set(1, 1, 1.0), set(2, 2, 1.0), set(3, 3, std::exp(kI * params[0]));
  } else if (name == "cpswap") {
    require_params(name, params, 1);
    set(0, 0, 1.0), set(1, 2, 1.0), set(2, 1, 1.0), set(3, 3, std::exp(kI * params[0]));
  } else {
    fail(ErrorCode::kArgument, "unknown gate '" + name + "'");
  }
  return m;
}

Gate standard_gate(const std::string& name, std::vector<std::size_t> targets,
                   std::vector<double> params) {
  Gate g;
  g.arity = standard_gate_arity(name);
  require(targets.size() == static_cast<std::size_t>(g.arity), ErrorCode::kArgument,
          "gate " + name + " takes " + std::to_string(g.arity) + " target(s)");
  g.matrix = standard_gate_matrix(name, params);
  g.targets = {targets[0], g.arity == 2 ? targets[1] : targets[0]};
  require(g.arity == 1 || g.targets[0] != g.targets[1], ErrorCode::kArgument,
          "gate " + name + ": targets must be distinct");
  require(is_unitary(g.matrix, g.arity == 2 ? 4 : 2), ErrorCode::kInternal,
          "gate " + name + " is not unitary");
  g.label = name;
  g.params = std::move(params);
  return g;
}

std::vector<cplx> reversed_pair_matrix(const std::vector<cplx>& m) {
  // Basis index 2*a + b -> 2*b + a.
  static constexpr std::size_t kSwap[4] = {0, 2, 1, 3};
  std::vector<cplx> out(16);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[kSwap[r] * 4 + kSwap[c]] = m[r * 4 + c];
  return out;
}

void validate_layer(const Layer& layer, std::size_t n_qubits) {
  std::vector<char> single(n_qubits, 0), pair(n_qubits, 0);
  for (const Gate& g : layer.gates) {
    const std::size_t na = static_cast<std::size_t>(g.arity);
    require((na == 1 && g.matrix.size() == 4) || (na == 2 && g.matrix.size() == 16),
            ErrorCode::kLayerValidation, "gate " + g.label + " has a malformed matrix");
    for (std::size_t k = 0; k < na; ++k) {
      const std::size_t q = g.targets[k];
      require(q < n_qubits, ErrorCode::kLayerValidation,
              "gate " + g.label + " targets qubit " + std::to_string(q) + " outside the register");
      auto& seen = na == 1 ? single : pair;
      require(!seen[q], ErrorCode::kLayerValidation,
              "qubit " + std::to_string(q) + " appears twice in layer '" + layer.tag + "'");
      seen[q] = 1;
    }
    require(na == 1 || g.targets[0] != g.targets[1], ErrorCode::kLayerValidation,
            "gate " + g.label + " has repeated targets");
  }
}

void validate_circuit(const Circuit& circuit) {
  for (const auto& l : circuit.layers) validate_layer(l, circuit.n_qubits);
}

Circuit rqc_1d(std::size_t n, std::size_t d, std::uint64_t seed, const AngleRanges& ranges) {
  require(n % 2 == 1, ErrorCode::kArgument, "rqc_1d needs an odd number of qubits");
  require(d % 2 == 0, ErrorCode::kArgument, "rqc_1d needs an even depth");
  Circuit c{"rqc1d", n, Geometry::kLine, 0, 0, seed, {}};
  for (std::size_t l = 1; l <= d; ++l) {
    Layer layer;
    layer.tag = l % 2 ? "odd" : "even";
    for (std::size_t q = 0; q < n; ++q) layer.gates.push_back(random_su2(q, l, seed, ranges));
    for (std::size_t q = l % 2 ? 0 : 1; q + 1 < n; q += 2)
      layer.gates.push_back(standard_gate("cz", {q, q + 1}));
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Circuit pqc_1d(std::size_t n, std::size_t d, std::uint64_t seed, const AngleRanges& ranges) {
  require(n % 2 == 0 && n >= 2, ErrorCode::kArgument, "pqc_1d needs an even number of qubits");
  require(d % 2 == 0, ErrorCode::kArgument, "pqc_1d needs an even depth");
  Circuit c{"pqc1d", n, Geometry::kLine, 0, 0, seed, {}};
  Layer dimers;
  dimers.tag = "dimer";
  for (std::size_t q = 0; q + 1 < n; q += 2) dimers.gates.push_back(standard_gate("singlet", {q, q + 1}));
  c.layers.push_back(std::move(dimers));
  for (std::size_t l = 1; l <= d; ++l) {
    Layer layer;
    layer.tag = l % 2 ? "odd" : "even";
    for (std::size_t q = l % 2 ? 1 : 0; q + 1 < n; q += 2)
      layer.gates.push_back(random_eswap(q, q + 1, l, seed, ranges));
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Circuit rqc_2d(std::size_t lx, std::size_t ly, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges) {
  require(lx >= 1 && ly >= 1, ErrorCode::kArgument, "rqc_2d needs a non-empty lattice");
  require(d % 4 == 0, ErrorCode::kArgument, "rqc_2d depth must be a multiple of 4");
  const std::size_t n = lx * ly;
  Circuit c{"rqc2d", n, Geometry::kGrid, lx, ly, seed, {}};
  for (std::size_t l = 0; l < d; ++l) {
    const char kind = "ABCD"[l % 4];
    Layer layer;
    layer.tag = std::string(1, kind);
    for (std::size_t q = 0; q < n; ++q) layer.gates.push_back(random_su2(q, l, seed, ranges));
    for (const auto& p : grid_pairs(lx, ly, kind)) layer.gates.push_back(standard_gate("cz", {p[0], p[1]}));
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Circuit pqc_2d(std::size_t lx, std::size_t ly, std::size_t d, std::uint64_t seed,
               const AngleRanges& ranges) {
  require(lx >= 1 && ly >= 2 && ly % 2 == 0, ErrorCode::kArgument, "pqc_2d needs an even ly");
  require(d % 4 == 0 && d >= 4, ErrorCode::kArgument, "pqc_2d depth must be a positive multiple of 4");
  Circuit c{"pqc2d", lx * ly, Geometry::kGrid, lx, ly, seed, {}};
  for (std::size_t l = 0; l < d; ++l) {
    const char kind = "ABCD"[l % 4];
    Layer layer;
    layer.tag = std::string(1, kind);
    for (const auto& p : grid_pairs(lx, ly, kind)) {
      layer.gates.push_back(l == 0 ? standard_gate("singlet", {p[0], p[1]})
                                   : random_eswap(p[0], p[1], l, seed, ranges));
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

std::vector<std::size_t> snake_path(std::size_t lx, std::size_t ly) {
  require(lx >= 1 && ly >= 1, ErrorCode::kArgument, "snake_path needs lx, ly >= 1");
  std::vector<std::size_t> path(lx * ly);
  for (std::size_t x = 0; x < lx; ++x)
    for (std::size_t y = 0; y < ly; ++y) path[x * ly + y] = x * ly + (x % 2 == 0 ? y : ly - 1 - y);
  return path;
}

CompiledCircuit compile_1d(const Circuit& circuit) {
  validate_circuit(circuit);
  CompiledCircuit out;
  out.circuit = circuit;
  for (std::size_t l = 0; l < circuit.layers.size(); ++l) {
    for (const Gate& g : circuit.layers[l].gates) {
      if (g.is_pair()) {
        const std::size_t a = g.targets[0], b = g.targets[1];
        require(a + 1 == b || b + 1 == a, ErrorCode::kUnsupportedLayout,
                "gate " + g.label + " on (" + std::to_string(a) + "," + std::to_string(b) +
                    ") is not nearest-neighbour");
      }
    }
    out.provenance.push_back(l);
  }
  out.compiled_depth = count_pair_layers(out.circuit);
  return out;
}

std::size_t count_pair_layers(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.layers.begin(), c.layers.end(),
                                                [](const Layer& l) { return l.pair_count() > 0; }));
}

std::size_t compiled_depth(const CompiledCircuit& c) { return count_pair_layers(c.circuit); }

std::vector<Layer> schedule_asap(const std::vector<Gate>& program, std::size_t n_qubits) {
  std::vector<long> last_single(n_qubits, -1), last_pair(n_qubits, -1);
  std::vector<Layer> layers;
  for (const Gate& g : program) {
    long at = 0;
    const std::size_t na = static_cast<std::size_t>(g.arity);
    for (std::size_t k = 0; k < na; ++k) {
      const std::size_t q = g.targets[k];
      require(q < n_qubits, ErrorCode::kArgument, "schedule: target outside the register");
      at = g.is_pair() ? std::max({at, last_pair[q] + 1, last_single[q]})
                       : std::max({at, last_pair[q] + 1, last_single[q] + 1});
    }
    for (std::size_t k = 0; k < na; ++k) (g.is_pair() ? last_pair : last_single)[g.targets[k]] = at;
    if (layers.size() <= static_cast<std::size_t>(at)) layers.resize(static_cast<std::size_t>(at) + 1);
    layers[static_cast<std::size_t>(at)].gates.push_back(g);
  }
  return layers;
}

Circuit qft_textbook(std::size_t n) {
  require(n >= 1, ErrorCode::kArgument, "qft needs n >= 1");
  std::vector<Gate> program;
  for (std::size_t i = 0; i < n; ++i) {
    program.push_back(standard_gate("h", {i}));
    for (std::size_t k = i + 1; k < n; ++k)
      program.push_back(standard_gate("cp", {i, k}, {std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - i))}));
  }
  for (std::size_t i = 0; i < n / 2; ++i) program.push_back(standard_gate("swap", {i, n - 1 - i}));
  Circuit c{"qft", n, Geometry::kLine, 0, 0, 0, schedule_asap(program, n)};
  for (auto& l : c.layers) l.tag = "qft";
  return c;
}

CompiledCircuit qft_circuit(std::size_t n) {
  require(n >= 1, ErrorCode::kArgument, "qft needs n >= 1");
  std::vector<Gate> program;
  std::vector<std::size_t> stage_of;
  for (std::size_t i = 0; i < n; ++i) {
    // Qubit i sits at position 0 after the earlier stages moved qubits
    // 0..i-1 to the far end.
    program.push_back(standard_gate("h", {0}));
    stage_of.push_back(i);
    for (std::size_t k = i + 1; k < n; ++k) {
      const std::size_t pos = k - i - 1;
      program.push_back(standard_gate("cpswap", {pos, pos + 1},
                                      {std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - i))}));
      stage_of.push_back(i);
    }
  }
  std::vector<Layer> layers = schedule_asap(program, n);
  CompiledCircuit out;
  out.circuit = Circuit{"qft", n, Geometry::kLine, 0, 0, 0, {}};
  // Provenance: the earliest stage contributing to each layer.
  std::vector<long> last_single(n, -1), last_pair(n, -1);
  std::vector<std::size_t> prov(layers.size(), n);
  for (std::size_t gi = 0; gi < program.size(); ++gi) {
    const Gate& g = program[gi];
    long at = 0;
    const std::size_t na = static_cast<std::size_t>(g.arity);
    for (std::size_t k = 0; k < na; ++k) {
      const std::size_t q = g.targets[k];
      at = g.is_pair() ? std::max({at, last_pair[q] + 1, last_single[q]})
                       : std::max({at, last_pair[q] + 1, last_single[q] + 1});
    }
    for (std::size_t k = 0; k < na; ++k) (g.is_pair() ? last_pair : last_single)[g.targets[k]] = at;
    prov[static_cast<std::size_t>(at)] = std::min(prov[static_cast<std::size_t>(at)], stage_of[gi]);
  }
  for (auto& l : layers) l.tag = "qft";
  out.circuit.layers = std::move(layers);
  out.provenance = std::move(prov);
  out.compiled_depth = count_pair_layers(out.circuit);
  return out;
}

}  // namespace ipmc
