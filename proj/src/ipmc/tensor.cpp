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

#include "ipmc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Core>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ipmc/error.hpp"

namespace ipmc {
namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void check_extents(const std::vector<std::size_t>& shape) {
  for (std::size_t e : shape) {
    require(e >= 1, ErrorCode::kShape, "tensor extents must be >= 1, got " + shape_string(shape));
  }
}

void require_matrix(const DenseTensor& m, const char* op) {
  require(m.rank() == 2, ErrorCode::kShape,
          std::string(op) + " expects a rank-2 tensor, got shape " + shape_string(m.shape()));
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  check_extents(shape_);
  data_.assign(product(shape_), cplx{0.0, 0.0});
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_extents(shape_);
  require(product(shape_) == data_.size(), ErrorCode::kShape,
          "data length " + std::to_string(data_.size()) + " does not match shape " +
              shape_string(shape_));
}

DenseTensor DenseTensor::matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data) {
  return DenseTensor({rows, cols}, std::move(data));
}

DenseTensor DenseTensor::identity(std::size_t n) {
  DenseTensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = 1.0;
  return t;
}

std::size_t DenseTensor::offset(std::initializer_list<std::size_t> index) const {
  require(index.size() == shape_.size(), ErrorCode::kDimension, "index rank mismatch");
  std::size_t flat = 0;
  std::size_t axis = 0;
  for (std::size_t i : index) {
    require(i < shape_[axis], ErrorCode::kDimension, "index out of range");
    flat = flat * shape_[axis] + i;
    ++axis;
  }
  return flat;
}

DenseTensor DenseTensor::reshaped(std::vector<std::size_t> shape) const {
  check_extents(shape);
  require(product(shape) == data_.size(), ErrorCode::kShape,
          "cannot reshape " + shape_string(shape_) + " to " + shape_string(shape));
  return DenseTensor(std::move(shape), data_);
}

DenseTensor DenseTensor::permuted(std::span<const std::size_t> perm) const {
  const std::size_t r = rank();
  require(perm.size() == r, ErrorCode::kDimension, "permutation rank mismatch");
  std::vector<bool> seen(r, false);
  for (std::size_t p : perm) {
    require(p < r && !seen[p], ErrorCode::kDimension, "invalid axis permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> out_shape(r);
  for (std::size_t k = 0; k < r; ++k) out_shape[k] = shape_[perm[k]];

  std::vector<std::size_t> in_stride(r, 1);
  for (std::size_t k = r; k-- > 1;) in_stride[k - 1] = in_stride[k] * shape_[k];
  // Stride in the input for each output axis.
  std::vector<std::size_t> stride(r);
  for (std::size_t k = 0; k < r; ++k) stride[k] = in_stride[perm[k]];

  DenseTensor out(out_shape);
  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t flat = 0; flat < data_.size(); ++flat) {
    out.data_[flat] = data_[src];
    for (std::size_t k = r; k-- > 0;) {
      if (++idx[k] < out_shape[k]) {
        src += stride[k];
        break;
      }
      src -= stride[k] * (out_shape[k] - 1);
      idx[k] = 0;
    }
  }
  return out;
}

DenseTensor& DenseTensor::operator*=(cplx factor) {
  for (cplx& v : data_) v *= factor;
  return *this;
}

double DenseTensor::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

DenseTensor operator*(cplx factor, DenseTensor t) {
  t *= factor;
  return t;
}

DenseTensor operator-(const DenseTensor& a, const DenseTensor& b) {
  require(a.shape() == b.shape(), ErrorCode::kDimension,
          "shape mismatch " + shape_string(a.shape()) + " vs " + shape_string(b.shape()));
  DenseTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ')';
  return os.str();
}

DenseTensor contract(const DenseTensor& a, std::span<const std::size_t> a_axes,
                     const DenseTensor& b, std::span<const std::size_t> b_axes) {
  require(a_axes.size() == b_axes.size(), ErrorCode::kDimension,
          "contract: axis lists differ in length");
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  std::size_t inner = 1;
  for (std::size_t k = 0; k < a_axes.size(); ++k) {
    const std::size_t ia = a_axes[k], ib = b_axes[k];
    require(ia < a.rank() && ib < b.rank() && !a_used[ia] && !b_used[ib], ErrorCode::kDimension,
            "contract: invalid or repeated axis");
    require(a.extent(ia) == b.extent(ib), ErrorCode::kDimension,
            "contract: extent mismatch " + std::to_string(a.extent(ia)) + " vs " +
                std::to_string(b.extent(ib)) + " between " + shape_string(a.shape()) + " and " +
                shape_string(b.shape()));
    a_used[ia] = b_used[ib] = true;
    inner *= a.extent(ia);
  }

  std::vector<std::size_t> a_perm, b_perm, out_shape;
  std::size_t a_free = 1, b_free = 1;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a_used[i]) continue;
    a_perm.push_back(i);
    out_shape.push_back(a.extent(i));
    a_free *= a.extent(i);
  }
  a_perm.insert(a_perm.end(), a_axes.begin(), a_axes.end());
  b_perm.assign(b_axes.begin(), b_axes.end());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (b_used[i]) continue;
    b_perm.push_back(i);
    out_shape.push_back(b.extent(i));
    b_free *= b.extent(i);
  }

  const DenseTensor ap = a.permuted(a_perm);
  const DenseTensor bp = b.permuted(b_perm);
  std::vector<cplx> out(a_free * b_free);
  MapMat(out.data(), a_free, b_free).noalias() =
      CMapMat(ap.raw(), a_free, inner) * CMapMat(bp.raw(), inner, b_free);
  if (out_shape.empty()) out_shape.push_back(1);
  return DenseTensor(std::move(out_shape), std::move(out));
}

DenseTensor contract(const DenseTensor& a, std::initializer_list<std::size_t> a_axes,
                     const DenseTensor& b, std::initializer_list<std::size_t> b_axes) {
  return contract(a, std::span<const std::size_t>(a_axes.begin(), a_axes.size()), b,
                  std::span<const std::size_t>(b_axes.begin(), b_axes.size()));
}

DenseTensor matmul(const DenseTensor& a, const DenseTensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  return contract(a, {1}, b, {0});
}

DenseTensor adjoint(const DenseTensor& m) {
  require_matrix(m, "adjoint");
  const std::size_t r = m.extent(0), c = m.extent(1);
  DenseTensor out({c, r});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = std::conj(m[i * c + j]);
  return out;
}

DenseTensor SvdFactorization::reconstruct() const {
  const std::size_t rows = u.extent(0), cols = vdag.extent(1), k = s.size();
  DenseTensor us = u;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < k; ++j) us[i * k + j] *= s[j];
  std::vector<cplx> out(rows * cols);
  MapMat(out.data(), rows, cols).noalias() =
      CMapMat(us.raw(), rows, k) * CMapMat(vdag.raw(), k, cols);
  return DenseTensor::matrix(rows, cols, std::move(out));
}

SvdFactorization svd(const DenseTensor& m) {
  require_matrix(m, "svd");
  const auto rows = static_cast<lapack_int>(m.extent(0));
  const auto cols = static_cast<lapack_int>(m.extent(1));
  const lapack_int k = std::min(rows, cols);

  for (const cplx& v : m.data()) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::kNumerical,
            "svd: non-finite entry in matrix of shape " + shape_string(m.shape()));
  }

  std::vector<cplx> a(m.data().begin(), m.data().end());
  std::vector<double> s(static_cast<std::size_t>(k));
  std::vector<cplx> u(static_cast<std::size_t>(rows * k));
  std::vector<cplx> vt(static_cast<std::size_t>(k * cols));

  lapack_int info = LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'S', rows, cols, a.data(), cols, s.data(),
                                   u.data(), k, vt.data(), cols);
  if (info > 0) {
    // Divide-and-conquer failed to converge; retry with the QR-iteration driver.
    a.assign(m.data().begin(), m.data().end());
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(k - 1, 1)));
    info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', rows, cols, a.data(), cols, s.data(),
                          u.data(), k, vt.data(), cols, superb.data());
  }
  if (info != 0) {
    fail(ErrorCode::kNumerical, "svd: LAPACK failed (info=" + std::to_string(info) +
                                    ") on matrix of shape " + shape_string(m.shape()));
  }

  SvdFactorization f;
  f.u = DenseTensor::matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(k),
                            std::move(u));
  f.s = std::move(s);
  f.vdag = DenseTensor::matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(cols),
                               std::move(vt));
  for (double& x : f.s) x = std::max(x, 0.0);
  return f;
}

void truncate_factorization(SvdFactorization& f, std::size_t keep) {
  const std::size_t k = f.s.size();
  keep = std::clamp<std::size_t>(keep, 1, k);
  if (keep == k) return;
  const std::size_t rows = f.u.extent(0), cols = f.vdag.extent(1);
  std::vector<cplx> u(rows * keep);
  for (std::size_t i = 0; i < rows; ++i)
    std::copy_n(f.u.raw() + i * k, keep, u.data() + i * keep);
  std::vector<cplx> vt(f.vdag.data().begin(), f.vdag.data().begin() + keep * cols);
  f.u = DenseTensor::matrix(rows, keep, std::move(u));
  f.vdag = DenseTensor::matrix(keep, cols, std::move(vt));
  f.s.resize(keep);
}

SvdFactorization truncated_svd(const DenseTensor& m, std::size_t chi_max) {
  require(chi_max >= 1, ErrorCode::kArgument, "truncated_svd: chi_max must be >= 1");
  SvdFactorization f = svd(m);
  // LAPACK returns values in descending order; stable order keeps the lower
  // index among equal values, so cutting the prefix is the tie rule.
  const std::size_t keep = std::min(chi_max, f.s.size());
  double dropped = 0.0;
  for (std::size_t j = keep; j < f.s.size(); ++j) dropped += f.s[j] * f.s[j];
  truncate_factorization(f, keep);
  f.discarded_weight = dropped;
  return f;
}

SvdFactorization trimmed_svd(const DenseTensor& m, std::size_t chi_max, double zero_cutoff) {
  require(chi_max >= 1, ErrorCode::kArgument, "trimmed_svd: chi_max must be >= 1");
  SvdFactorization f = svd(m);
  const double floor = zero_cutoff * f.s.front();
  std::size_t nonzero = 0;
  while (nonzero < f.s.size() && f.s[nonzero] > floor) ++nonzero;
  const std::size_t keep = std::max<std::size_t>(1, std::min(chi_max, nonzero));
  double dropped = 0.0;
  for (std::size_t j = keep; j < nonzero; ++j) dropped += f.s[j] * f.s[j];
  truncate_factorization(f, keep);
  f.discarded_weight = dropped;
  return f;
}

}  // namespace ipmc
