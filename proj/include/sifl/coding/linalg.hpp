//
// Copyright 2026 The SIFL Authors
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
//

#ifndef SIFL_CODING_LINALG_HPP_
#define SIFL_CODING_LINALG_HPP_

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <limits>

#include "sifl/core/errors.hpp"
#include "sifl/core/types.hpp"

namespace sifl {

// Moore-Penrose left inverse (A^T A)^{-1} A^T of a tall, full-column-rank
// matrix, evaluated through a Householder QR: A = Q1 R  =>  A^+ = R^{-1} Q1^T.
template <typename Derived>
MatrixX<typename Derived::Scalar> left_inverse(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() < a.cols()) {
    throw DimensionError("left_inverse: matrix must have rows >= cols");
  }
  const Index n = a.cols();
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(a);
  const MatrixX<Scalar> thin_q =
      qr.householderQ() * MatrixX<Scalar>::Identity(a.rows(), n);
  const MatrixX<Scalar> r =
      qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
  return r.template triangularView<Eigen::Upper>().solve(
      thin_q.transpose());
}

// Orthonormal basis (as columns) of the orthogonal complement of range(A),
// i.e. of ker(A^T). For full-column-rank A this is also ker(A^+).
template <typename Derived>
MatrixX<typename Derived::Scalar> orthonormal_complement(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Index rows = a.rows();
  const Index cols = a.cols();
  if (rows <= cols) {
    throw DimensionError("orthonormal_complement: range must be a proper subspace");
  }
  Eigen::HouseholderQR<MatrixX<Scalar>> qr(a);
  MatrixX<Scalar> q = qr.householderQ();
  return q.rightCols(rows - cols);
}

template <typename Derived>
VectorX<typename Derived::Scalar> singular_values(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::BDCSVD<MatrixX<Scalar>> svd(a);
  return svd.singularValues();
}

// sigma_max / sigma_min; +inf when rank deficient.
template <typename Derived>
typename Derived::Scalar condition_number(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const VectorX<Scalar> s = singular_values(a);
  if (s.size() == 0) return Scalar(1);
  const Scalar smin = s(s.size() - 1);
  if (smin == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return s(0) / smin;
}

// Number of singular values above rel_tol * sigma_max.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a,
                     typename Derived::Scalar rel_tol) {
  const auto s = singular_values(a);
  if (s.size() == 0 || s(0) == 0) return 0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace sifl

#endif  // SIFL_CODING_LINALG_HPP_
