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

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ipmc/error.hpp"
#include "ipmc/mps.hpp"

namespace ipmc {
namespace {

constexpr char kMagic[8] = {'I', 'P', 'M', 'C', 'M', 'P', 'S', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 32;

template <typename T>
T byteswap_if_needed(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <typename T>
void put(std::ostream& out, T v) {
  v = byteswap_if_needed(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  require(static_cast<bool>(in), ErrorCode::kParse, "snapshot: truncated input");
  return byteswap_if_needed(v);
}

}  // namespace

void write_snapshot(const VidalMps& state, std::ostream& out) {
  state.validate();
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, state.n_sites());
  for (const auto& l : state.lambdas) put<std::uint64_t>(out, l.size());
  for (const auto& g : state.gammas) {
    for (const cplx& v : g.data()) {
      put<double>(out, v.real());
      put<double>(out, v.imag());
    }
  }
  for (const auto& l : state.lambdas)
    for (double x : l) put<double>(out, x);
  put<double>(out, state.log_norm_offset);
  require(static_cast<bool>(out), ErrorCode::kIo, "snapshot: write failed");
}

VidalMps read_snapshot(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  require(static_cast<bool>(in) && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
          ErrorCode::kParse, "snapshot: bad magic");
  const auto version = get<std::uint32_t>(in);
  require(version == kVersion, ErrorCode::kParse,
          "snapshot: unsupported version " + std::to_string(version));
  const auto n = get<std::uint64_t>(in);
  require(n >= 1 && n < kMaxDim, ErrorCode::kParse, "snapshot: bad site count");
  std::vector<std::size_t> dims(n + 1);
  for (auto& d : dims) {
    const auto v = get<std::uint64_t>(in);
    require(v >= 1 && v < kMaxDim, ErrorCode::kParse, "snapshot: bad bond dimension");
    d = static_cast<std::size_t>(v);
  }
  VidalMps m;
  for (std::size_t i = 0; i < n; ++i) {
    DenseTensor g({dims[i], 2, dims[i + 1]});
    for (cplx& v : g.data()) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      v = {re, im};
    }
    m.gammas.push_back(std::move(g));
  }
  for (std::size_t b = 0; b <= n; ++b) {
    std::vector<double> l(dims[b]);
    for (double& x : l) x = get<double>(in);
    m.lambdas.push_back(std::move(l));
  }
  m.log_norm_offset = get<double>(in);
  m.validate();
  return m;
}

void save_snapshot(const VidalMps& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path + " for writing");
  write_snapshot(state, out);
}

VidalMps load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  return read_snapshot(in);
}

}  // namespace ipmc
