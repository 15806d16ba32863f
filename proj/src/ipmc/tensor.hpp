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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ipmc {

using cplx = std::complex<double>;

/// Singular values at or below this fraction of the largest one are exact
/// zeros: they are dropped from bonds and never inverted.
inline constexpr double kZeroThreshold = 1e-14;

/// Dense complex tensor, row-major (last index fastest).
class DenseTensor {
 public:
  DenseTensor() = default;
  /// Zero tensor of the given shape.
  explicit DenseTensor(std::vector<std::size_t> shape);
  DenseTensor(std::vector<std::size_t> shape, std::vector<cplx> data);

  static DenseTensor matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  static DenseTensor identity(std::size_t n);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }
  cplx* raw() noexcept { return data_.data(); }
  const cplx* raw() const noexcept { return data_.data(); }

  cplx& operator[](std::size_t flat) { return data_[flat]; }
  const cplx& operator[](std::size_t flat) const { return data_[flat]; }

  cplx& at(std::initializer_list<std::size_t> index) { return data_[offset(index)]; }
  const cplx& at(std::initializer_list<std::size_t> index) const { return data_[offset(index)]; }

  /// Same data, new shape with equal element count.
  DenseTensor reshaped(std::vector<std::size_t> shape) const;
  /// Axis permutation: result axis k is input axis perm[k].
  DenseTensor permuted(std::span<const std::size_t> perm) const;

  DenseTensor& operator*=(cplx factor);
  double frobenius_norm() const;

 private:
  std::size_t offset(std::initializer_list<std::size_t> index) const;

  std::vector<std::size_t> shape_;
  std::vector<cplx> data_;
};

DenseTensor operator*(cplx factor, DenseTensor t);
DenseTensor operator-(const DenseTensor& a, const DenseTensor& b);

std::string shape_string(const std::vector<std::size_t>& shape);

/// Sums over paired axes a_axes[k] <-> b_axes[k]. Result axes: the free axes of
/// `a` in order, then the free axes of `b` in order.
DenseTensor contract(const DenseTensor& a, std::span<const std::size_t> a_axes,
                     const DenseTensor& b, std::span<const std::size_t> b_axes);
DenseTensor contract(const DenseTensor& a, std::initializer_list<std::size_t> a_axes,
                     const DenseTensor& b, std::initializer_list<std::size_t> b_axes);

/// Rank-2 product a * b.
DenseTensor matmul(const DenseTensor& a, const DenseTensor& b);
/// Conjugate transpose of a rank-2 tensor.
DenseTensor adjoint(const DenseTensor& m);

struct SvdFactorization {
  DenseTensor u;          ///< rows x k, orthonormal columns
  std::vector<double> s;  ///< k values, descending, non-negative
  DenseTensor vdag;       ///< k x cols, orthonormal rows
  double discarded_weight = 0.0;

  std::size_t kept() const noexcept { return s.size(); }
  /// u * diag(s) * vdag.
  DenseTensor reconstruct() const;
};

/// Thin SVD of a rank-2 tensor; all min(rows, cols) values are kept.
SvdFactorization svd(const DenseTensor& m);

/// Keeps the min(chi_max, rank) largest singular values. Ties at the cut keep
/// the lower original index. discarded_weight is the sum of squared dropped
/// values.
SvdFactorization truncated_svd(const DenseTensor& m, std::size_t chi_max);

/// Truncation to chi_max that also drops values <= zero_cutoff * s_max (those
/// count as exact zeros and are not added to discarded_weight). Always keeps
/// at least one value.
SvdFactorization trimmed_svd(const DenseTensor& m, std::size_t chi_max,
                             double zero_cutoff = kZeroThreshold);

/// Restricts a factorization to its first `keep` singular triplets.
void truncate_factorization(SvdFactorization& f, std::size_t keep);

}  // namespace ipmc
