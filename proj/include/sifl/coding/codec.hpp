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

#ifndef SIFL_CODING_CODEC_HPP_
#define SIFL_CODING_CODEC_HPP_

#include <string>
#include <type_traits>
#include <utility>

#include "sifl/coding/keys.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/core/types.hpp"

namespace sifl {

// A model lifted into n_tilde coordinates: Pi1 w + N1 r1.
template <typename Scalar>
struct EncodedVector {
  VectorX<Scalar> values;
};

// n_tilde x p: either an encoded model widened by pi2, or Pi1 applied to a
// pi2-masked model.
template <typename Scalar>
struct EncodedMatrix {
  MatrixX<Scalar> values;
};

using EncodedVectord = EncodedVector<double>;
using EncodedMatrixd = EncodedMatrix<double>;

// Scalar is deduced from the keys alone, so Eigen expressions convert.
template <typename T>
using NoDeduce = std::type_identity_t<T>;

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}
}  // namespace detail

template <typename Scalar>
EncodedVector<Scalar> encode_model(const ServerKeys<Scalar>& keys,
                                   const NoDeduce<VectorX<Scalar>>& w,
                                   const NoDeduce<VectorX<Scalar>>& r1) {
  detail::require(w.size() == keys.n(), "encode_model: w must have length n");
  detail::require(r1.size() == keys.kernel_dim(),
                  "encode_model: r1 must have length n_tilde - n");
  VectorX<Scalar> x = keys.immersion().lift(w);
  x += keys.apply_kernel(r1);
  return {std::move(x)};
}

// Pi1 W + N1 R1; column m equals encode_model(W.col(m), R1.col(m)).
template <typename Scalar>
EncodedMatrix<Scalar> encode_model_matrix(const ServerKeys<Scalar>& keys,
                                          const NoDeduce<MatrixX<Scalar>>& w,
                                          const NoDeduce<MatrixX<Scalar>>& r1) {
  detail::require(w.rows() == keys.n(), "encode_model_matrix: W must have n rows");
  detail::require(r1.rows() == keys.kernel_dim() && r1.cols() == w.cols(),
                  "encode_model_matrix: R1 must be (n_tilde - n) x p");
  MatrixX<Scalar> x = keys.immersion().lift(w);
  x += keys.apply_kernel(r1);
  return {std::move(x)};
}

template <typename Scalar>
VectorX<Scalar> decode_model(const Immersion<Scalar>& im,
                             const EncodedVector<Scalar>& x) {
  detail::require(x.values.size() == im.n_tilde(),
                  "decode_model: encoded vector must have length n_tilde");
  return im.project(x.values);
}

// Pi1^L applied to an n_tilde x p matrix; the result stays pi2-masked.
template <typename Scalar>
MatrixX<Scalar> decode_model(const Immersion<Scalar>& im,
                             const EncodedMatrix<Scalar>& x) {
  detail::require(x.values.rows() == im.n_tilde(),
                  "decode_model: encoded matrix must have n_tilde rows");
  return im.project(x.values);
}

template <typename Scalar>
VectorX<Scalar> decode_model(const ServerKeys<Scalar>& keys,
                             const EncodedVector<Scalar>& x) {
  return decode_model(keys.immersion(), x);
}

template <typename Scalar>
MatrixX<Scalar> decode_model(const ServerKeys<Scalar>& keys,
                             const EncodedMatrix<Scalar>& x) {
  return decode_model(keys.immersion(), x);
}

// (w~ as a column) * Pi2 + R2 * N2
template <typename Scalar>
EncodedMatrix<Scalar> encode_aggregate(const AggregatorKeys<Scalar>& keys,
                                       const EncodedVector<Scalar>& x,
                                       const NoDeduce<MatrixX<Scalar>>& r2) {
  detail::require(r2.rows() == x.values.size() && r2.cols() == keys.p() - 1,
                  "encode_aggregate: R2 must be n_tilde x (p - 1)");
  MatrixX<Scalar> out = x.values * keys.pi2();
  out.noalias() += r2 * keys.n2();
  return {std::move(out)};
}

// W' * Pi2^R. Clients only hold pi2_right, hence the vector overload.
template <typename Scalar>
EncodedVector<Scalar> decode_aggregate(const VectorX<Scalar>& pi2_right,
                                       const EncodedMatrix<Scalar>& x) {
  detail::require(x.values.cols() == pi2_right.size(),
                  "decode_aggregate: matrix must have p columns");
  return {x.values * pi2_right};
}

template <typename Scalar>
EncodedVector<Scalar> decode_aggregate(const AggregatorKeys<Scalar>& keys,
                                       const EncodedMatrix<Scalar>& x) {
  return decode_aggregate(keys.pi2_right(), x);
}

}  // namespace sifl

#endif  // SIFL_CODING_CODEC_HPP_
