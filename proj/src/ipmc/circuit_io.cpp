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

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ipmc/circuits.hpp"
#include "ipmc/error.hpp"

namespace ipmc {
namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse, "circuit line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_circuit(const Circuit& c, std::ostream& out) {
  out << "# family " << c.family << '\n';
  out << "# n " << c.n_qubits << '\n';
  if (c.geometry == Geometry::kGrid) out << "# geometry grid " << c.lx << ' ' << c.ly << '\n';
  else out << "# geometry line\n";
  out << "# seed " << c.seed << '\n';
  out << "# depth " << c.layers.size() << '\n';
  out << "# tags";
  for (const auto& l : c.layers) out << ' ' << (l.tag.empty() ? "-" : l.tag);
  out << '\n';
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    for (const Gate& g : c.layers[li].gates) {
      require(g.label != "u", ErrorCode::kArgument, "cannot serialize a fused gate");
      out << li << ' ' << g.label << ' ' << g.targets[0];
      if (g.is_pair()) out << ' ' << g.targets[1];
      for (double p : g.params) out << ' ' << format_double(p);
      out << '\n';
    }
  }
}

Circuit read_circuit(std::istream& in) {
  Circuit c;
  std::size_t depth = 0;
  bool have_depth = false;
  std::vector<std::string> tags;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "family") {
        ls >> c.family;
      } else if (key == "n") {
        ls >> c.n_qubits;
      } else if (key == "geometry") {
        std::string kind;
        ls >> kind;
        if (kind == "grid") {
          c.geometry = Geometry::kGrid;
          ls >> c.lx >> c.ly;
        } else if (kind != "line") {
          parse_fail(lineno, "unknown geometry '" + kind + "'");
        }
      } else if (key == "seed") {
        ls >> c.seed;
      } else if (key == "depth") {
        ls >> depth;
        have_depth = true;
      } else if (key == "tags") {
        std::string t;
        while (ls >> t) tags.push_back(t == "-" ? "" : t);
      }
      if (ls.fail() && !ls.eof()) parse_fail(lineno, "malformed header");
      continue;
    }
    if (!have_depth) parse_fail(lineno, "gate line before the depth header");
    if (c.layers.size() != depth) {
      c.layers.resize(depth);
      for (std::size_t i = 0; i < tags.size() && i < depth; ++i) c.layers[i].tag = tags[i];
    }
    std::size_t layer = 0;
    std::string label;
    if (!(ls >> layer >> label)) parse_fail(lineno, "expected 'layer label targets...'");
    if (layer >= depth) parse_fail(lineno, "layer index beyond the declared depth");
    int arity = 0;
    try {
      arity = standard_gate_arity(label);
    } catch (const Error&) {
      parse_fail(lineno, "unknown gate '" + label + "'");
    }
    std::vector<std::size_t> targets(static_cast<std::size_t>(arity));
    for (auto& t : targets) {
      if (!(ls >> t)) parse_fail(lineno, "missing target");
    }
    std::vector<double> params;
    std::string tok;
    while (ls >> tok) {
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) parse_fail(lineno, "bad parameter '" + tok + "'");
      params.push_back(v);
    }
    try {
      c.layers[layer].gates.push_back(standard_gate(label, targets, params));
    } catch (const Error& e) {
      parse_fail(lineno, e.what());
    }
  }
  if (c.layers.size() != depth) {
    c.layers.resize(depth);
    for (std::size_t i = 0; i < tags.size() && i < depth; ++i) c.layers[i].tag = tags[i];
  }
  try {
    validate_circuit(c);
  } catch (const Error& e) {
    fail(ErrorCode::kParse, std::string("circuit: ") + e.what());
  }
  return c;
}

}  // namespace ipmc
