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

#include <algorithm>
#include <map>
#include <optional>

#include "ipmc/circuits.hpp"
#include "ipmc/error.hpp"

namespace ipmc {
namespace {

// One compiled layer of the per-column SWAP network. Local position k = 0 is
// the column end facing its C partner, k = L-1 the end facing its D partner.
// Element e starts (and ends) at position e.
struct ColumnStep {
  std::vector<std::size_t> order;       // element at each position, before the step
  std::vector<std::size_t> swaps;       // swap positions (k, k+1)
  std::optional<std::size_t> c_fire;    // element doing its C gate at position 0
  std::optional<std::size_t> d_fire;    // element doing its D gate at position L-1
};

// Odd-even transposition network. Each element first travels to position 0
// (its C gate), then to L-1 (its D gate), then home. Neighbours swap only
// when both want to cross each other. Takes 3(L-1)+2 steps.
std::vector<ColumnStep> column_schedule(std::size_t L) {
  enum Phase { kSeekC, kSeekD, kHome, kDone };
  std::vector<std::size_t> order(L);
  for (std::size_t k = 0; k < L; ++k) order[k] = k;
  std::vector<Phase> phase(L, kSeekC);

  auto want = [&](std::size_t e, std::size_t pos) -> int {
    switch (phase[e]) {
      case kSeekC: return pos > 0 ? -1 : 0;
      case kSeekD: return pos + 1 < L ? 1 : 0;
      case kHome: return pos > e ? -1 : (pos < e ? 1 : 0);
      case kDone: return 0;
    }
    return 0;
  };

  std::vector<ColumnStep> steps;
  std::size_t parity = 1;
  while (!std::all_of(phase.begin(), phase.end(), [](Phase p) { return p == kDone; })) {
    require(steps.size() <= 4 * L + 4, ErrorCode::kInternal, "column schedule did not terminate");
    ColumnStep st;
    st.order = order;
    std::vector<char> busy(L, 0);
    std::vector<std::size_t> next = order;
    for (std::size_t i = parity; i + 1 < L; i += 2) {
      if (want(order[i], i) == 1 && want(order[i + 1], i + 1) == -1) {
        std::swap(next[i], next[i + 1]);
        busy[i] = busy[i + 1] = 1;
        st.swaps.push_back(i);
      }
    }
    const std::size_t e0 = order[0], e1 = order[L - 1];
    const bool c_fire = !busy[0] && phase[e0] == kSeekC;
    const bool d_fire = !busy[L - 1] && phase[e1] == kSeekD && !(L == 1 && c_fire);
    if (c_fire) {
      st.c_fire = e0;
      phase[e0] = kSeekD;
    }
    if (d_fire) {
      st.d_fire = e1;
      phase[e1] = kHome;
    }
    order = next;
    for (std::size_t k = 0; k < L; ++k)
      if (phase[order[k]] == kHome && order[k] == k) phase[order[k]] = kDone;
    parity ^= 1;
    steps.push_back(std::move(st));
  }
  return steps;
}

using PairKey = std::pair<std::size_t, std::size_t>;
PairKey key(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

Gate relabel(Gate g, const std::vector<std::size_t>& map) {
  g.targets[0] = map[g.targets[0]];
  g.targets[1] = map[g.targets[1]];
  return g;
}

}  // namespace

CompiledCircuit recompile_2d(const Circuit& circuit, const std::vector<std::size_t>& path) {
  require(circuit.geometry == Geometry::kGrid, ErrorCode::kUnsupportedLayout,
          "recompile_2d needs a grid circuit");
  const std::size_t lx = circuit.lx, ly = circuit.ly, n = circuit.n_qubits;
  require(lx * ly == n && path.size() == n, ErrorCode::kUnsupportedLayout,
          "grid dimensions do not match the register or path");
  {
    std::vector<char> seen(n, 0);
    for (std::size_t p : path) {
      require(p < n && !seen[p], ErrorCode::kArgument, "path is not a bijection");
      seen[p] = 1;
    }
  }
  validate_circuit(circuit);

  // Lattice label of the element at local position k in column x at home.
  const auto home_label = [ly](std::size_t x, std::size_t k) { return x * ly + (ly - 1 - k); };
  const std::vector<ColumnStep> sched = column_schedule(ly);

  CompiledCircuit out;
  out.circuit = circuit;
  out.circuit.layers.clear();
  const auto emit = [&out](Layer layer, std::size_t physical) {
    if (layer.gates.empty()) return;
    out.circuit.layers.push_back(std::move(layer));
    out.provenance.push_back(physical);
  };

  for (std::size_t li = 0; li < circuit.layers.size(); ++li) {
    const Layer& phys = circuit.layers[li];
    if (phys.tag == "A" || phys.tag == "B") {
      Layer layer;
      layer.tag = phys.tag;
      for (const Gate& g : phys.gates) {
        Gate m = relabel(g, path);
        if (m.is_pair()) {
          const std::size_t a = m.targets[0], b = m.targets[1];
          require(a + 1 == b || b + 1 == a, ErrorCode::kUnsupportedLayout,
                  "layer " + std::to_string(li) + " (" + phys.tag + ") has a gate off the path");
        }
        layer.gates.push_back(std::move(m));
      }
      emit(std::move(layer), li);
      continue;
    }
    require(phys.tag == "C" && li + 1 < circuit.layers.size() && circuit.layers[li + 1].tag == "D",
            ErrorCode::kUnsupportedLayout,
            "layer " + std::to_string(li) + " ('" + phys.tag + "') breaks the ABCD structure");
    const Layer& cl = phys;
    const Layer& dl = circuit.layers[li + 1];

    // Index the physical gates of the block.
    std::map<PairKey, const Gate*> c_pairs, d_pairs;
    std::vector<const Gate*> c_single(n, nullptr), d_single(n, nullptr);
    for (const Gate& g : cl.gates) {
      if (g.is_pair()) c_pairs[key(g.targets[0], g.targets[1])] = &g;
      else c_single[g.targets[0]] = &g;
    }
    for (const Gate& g : dl.gates) {
      if (g.is_pair()) d_pairs[key(g.targets[0], g.targets[1])] = &g;
      else d_single[g.targets[0]] = &g;
    }
    std::vector<char> has_d(n, 0);
    for (const auto& [k, g] : d_pairs) has_d[k.first] = has_d[k.second] = 1;
    std::size_t used_c = 0, used_d = 0;

    for (std::size_t t = 0; t < sched.size(); ++t) {
      const ColumnStep& st = sched[t];
      const bool last = t + 1 == sched.size();
      // Path position of local k in column x.
      const auto pos = [&](std::size_t x, std::size_t k) { return path[home_label(x, k)]; };
      // Qubit label currently at local k in column x.
      const auto occupant = [&](std::size_t x, std::size_t k) { return home_label(x, st.order[k]); };

      Layer layer;
      layer.tag = t == 0 ? "C" : "CD";
      for (std::size_t x = 0; x < lx; ++x) {
        for (std::size_t k = 0; k < ly; ++k) {
          const std::size_t q = occupant(x, k);
          const std::size_t e = st.order[k];
          std::vector<const Gate*> singles;
          if (t == 0 && c_single[q]) singles.push_back(c_single[q]);
          const bool d_now = has_d[q] ? (st.d_fire && *st.d_fire == e) : last;
          if (d_now && d_single[q]) singles.push_back(d_single[q]);
          for (const Gate* g : singles) {
            Gate m = *g;
            m.targets = {pos(x, k), pos(x, k)};
            layer.gates.push_back(std::move(m));
          }
        }
      }
      for (std::size_t x = 0; x < lx; ++x) {
        for (std::size_t k : st.swaps) layer.gates.push_back(standard_gate("swap", {pos(x, k), pos(x, k + 1)}));
      }
      const auto place = [&](const std::map<PairKey, const Gate*>& pairs, std::size_t k, std::size_t x0,
                             std::size_t& used) {
        for (std::size_t x = x0; x + 1 < lx; x += 2) {
          const std::size_t qa = occupant(x, k), qb = occupant(x + 1, k);
          auto it = pairs.find(key(qa, qb));
          if (it == pairs.end()) continue;
          Gate m = *it->second;
          const std::size_t pa = pos(x, k), pb = pos(x + 1, k);
          m.targets = {m.targets[0] == qa ? pa : pb, m.targets[0] == qa ? pb : pa};
          layer.gates.push_back(std::move(m));
          ++used;
        }
      };
      if (st.c_fire) place(c_pairs, 0, 0, used_c);
      if (st.d_fire) place(d_pairs, ly - 1, 1, used_d);
      emit(std::move(layer), st.d_fire || (t > 0 && !st.c_fire) ? li + 1 : li);
    }
    require(used_c == c_pairs.size() && used_d == d_pairs.size(), ErrorCode::kUnsupportedLayout,
            "layers " + std::to_string(li) + "/" + std::to_string(li + 1) +
                " contain two-qubit gates outside the C/D patterns");
    ++li;
  }
  out.compiled_depth = count_pair_layers(out.circuit);
  validate_circuit(out.circuit);
  return out;
}

}  // namespace ipmc
