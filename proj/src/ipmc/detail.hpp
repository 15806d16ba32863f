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

// Eigen views over the row-major buffers used across the library. Internal
// header, not installed.

#include <Eigen/Core>

#include "ipmc/tensor.hpp"

namespace ipmc::detail {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;
using StridedCMap = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;
using RealVec = Eigen::VectorXd;

inline CMapMat as_matrix(const DenseTensor& t, std::size_t rows, std::size_t cols) {
  return CMapMat(t.raw(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

inline MapMat as_matrix(DenseTensor& t, std::size_t rows, std::size_t cols) {
  return MapMat(t.raw(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

/// Slice gamma[:, sigma, :] of a (l, 2, r) site tensor as an l x r matrix.
inline StridedCMap phys_slice(const DenseTensor& gamma, std::size_t sigma) {
  const auto l = static_cast<Eigen::Index>(gamma.extent(0));
  const auto r = static_cast<Eigen::Index>(gamma.extent(2));
  return StridedCMap(gamma.raw() + sigma * gamma.extent(2), l, r, Eigen::OuterStride<>(2 * r));
}

inline RealVec to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const RealVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline DenseTensor from_matrix(const RowMat& m, std::vector<std::size_t> shape) {
  return DenseTensor(std::move(shape), std::vector<cplx>(m.data(), m.data() + m.size()));
}

}  // namespace ipmc::detail
