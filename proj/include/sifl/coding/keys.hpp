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

#ifndef SIFL_CODING_KEYS_HPP_
#define SIFL_CODING_KEYS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sifl/coding/linalg.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/core/rng.hpp"
#include "sifl/core/types.hpp"

namespace sifl {

enum class KeyLayout { kAuto, kDense, kStructured };

// Dense keys are used up to this many plaintext parameters under kAuto.
inline constexpr Index kDenseKeyLimit = 2048;
// Regenerations allowed after the first draw before GenerationFailure.
inline constexpr int kKeyGenRetries = 16;
// Rows of N1 and columns of N2 at or below this 2-norm count as zero.
inline constexpr double kMinKernelNorm = 1e-8;

struct KeyGenConfig {
  Index n = 1;
  Index n_tilde = 2;
  Index p = 2;
  double scale = 1.0;          // target ||Pi1^j||_1 (dense) and max |Pi2^m|
  double max_condition = 1e4;  // cond(Pi1) bound
  std::uint64_t seed = 0;
  KeyLayout layout = KeyLayout::kAuto;

  bool dense() const {
    return layout == KeyLayout::kDense ||
           (layout == KeyLayout::kAuto && n <= kDenseKeyLimit);
  }
};

// U = P * H1 * H2: a row permutation of two Householder reflections. Applying
// U or U^T costs O(rows * cols) instead of O(rows^2 * cols).
template <typename Scalar>
class OrthogonalMixer {
 public:
  OrthogonalMixer(std::vector<Index> perm, VectorX<Scalar> v1,
                  VectorX<Scalar> v2)
      : perm_(std::move(perm)), v1_(std::move(v1)), v2_(std::move(v2)) {
    if (v1_.size() != static_cast<Index>(perm_.size()) ||
        v2_.size() != v1_.size()) {
      throw DimensionError("OrthogonalMixer: inconsistent sizes");
    }
    c1_ = Scalar(2) / v1_.squaredNorm();
    c2_ = Scalar(2) / v2_.squaredNorm();
  }

  Index size() const { return v1_.size(); }
  const std::vector<Index>& permutation() const { return perm_; }
  const VectorX<Scalar>& v1() const { return v1_; }
  const VectorX<Scalar>& v2() const { return v2_; }

  // U * y
  MatrixX<Scalar> apply(const Eigen::Ref<const MatrixX<Scalar>>& y) const {
    check_rows(y.rows());
    MatrixX<Scalar> z = y;
    reflect(v2_, c2_, z);
    reflect(v1_, c1_, z);
    MatrixX<Scalar> out(z.rows(), z.cols());
    for (Index j = 0; j < size(); ++j) out.row(j) = z.row(perm_[j]);
    return out;
  }

  // U^T * x
  MatrixX<Scalar> apply_transpose(
      const Eigen::Ref<const MatrixX<Scalar>>& x) const {
    check_rows(x.rows());
    MatrixX<Scalar> z(x.rows(), x.cols());
    for (Index j = 0; j < size(); ++j) z.row(perm_[j]) = x.row(j);
    reflect(v1_, c1_, z);
    reflect(v2_, c2_, z);
    return z;
  }

  // Row j of U equals e_k - a1 * v1 - a2 * v2 with k = perm[j].
  struct RowForm {
    Index k;
    Scalar a1;
    Scalar a2;
  };
  RowForm row_form(Index j) const {
    const Index k = perm_[j];
    const Scalar a1 = c1_ * v1_(k);
    const Scalar a2 = c2_ * (v2_(k) - a1 * v1_.dot(v2_));
    return {k, a1, a2};
  }

  RowVectorX<Scalar> row(Index j) const {
    const RowForm f = row_form(j);
    RowVectorX<Scalar> r = -(f.a1 * v1_ + f.a2 * v2_).transpose();
    r(f.k) += Scalar(1);
    return r;
  }

 private:
  void check_rows(Index rows) const {
    if (rows != size()) {
      throw DimensionError("OrthogonalMixer: expected " +
                           std::to_string(size()) + " rows, got " +
                           std::to_string(rows));
    }
  }

  static void reflect(const VectorX<Scalar>& v, Scalar c, MatrixX<Scalar>& z) {
    const RowVectorX<Scalar> proj = v.transpose() * z;
    z.noalias() -= (c * v) * proj;
  }

  std::vector<Index> perm_;
  VectorX<Scalar> v1_;
  VectorX<Scalar> v2_;
  Scalar c1_;
  Scalar c2_;
};

// The lifting pair (Pi1, Pi1^L). This is the only key material the target
// optimizer needs, so clients hold an Immersion and nothing else of the
// server's keys.
template <typename Scalar>
class Immersion {
 public:
  static Immersion dense(MatrixX<Scalar> pi1, MatrixX<Scalar> pi1_left) {
    if (pi1_left.rows() != pi1.cols() || pi1_left.cols() != pi1.rows()) {
      throw DimensionError("Immersion: pi1_left must be the transpose shape of pi1");
    }
    Immersion im;
    im.rep_ = Dense{std::move(pi1), std::move(pi1_left)};
    return im;
  }

  static Immersion structured(std::shared_ptr<const OrthogonalMixer<Scalar>> mixer,
                              VectorX<Scalar> diag) {
    if (!mixer || diag.size() >= mixer->size() || diag.size() < 1) {
      throw DimensionError("Immersion: structured diag must be shorter than the mixer");
    }
    Immersion im;
    im.rep_ = Structured{std::move(mixer), std::move(diag)};
    return im;
  }

  Index n() const {
    return std::visit([](const auto& r) { return r.n(); }, rep_);
  }
  Index n_tilde() const {
    return std::visit([](const auto& r) { return r.n_tilde(); }, rep_);
  }
  bool is_dense() const { return std::holds_alternative<Dense>(rep_); }

  // Pi1 * w, for a vector or an n x p matrix.
  MatrixX<Scalar> lift(const Eigen::Ref<const MatrixX<Scalar>>& w) const {
    if (w.rows() != n()) {
      throw DimensionError("lift: expected " + std::to_string(n()) +
                           " rows, got " + std::to_string(w.rows()));
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->pi1 * w;
    const auto& s = std::get<Structured>(rep_);
    MatrixX<Scalar> y = MatrixX<Scalar>::Zero(n_tilde(), w.cols());
    y.topRows(n()) = s.diag.asDiagonal() * w;
    return s.mixer->apply(y);
  }

  // Pi1^L * x, for a vector or an n_tilde x p matrix.
  MatrixX<Scalar> project(const Eigen::Ref<const MatrixX<Scalar>>& x) const {
    if (x.rows() != n_tilde()) {
      throw DimensionError("project: expected " + std::to_string(n_tilde()) +
                           " rows, got " + std::to_string(x.rows()));
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->pi1_left * x;
    const auto& s = std::get<Structured>(rep_);
    const MatrixX<Scalar> z = s.mixer->apply_transpose(x);
    return s.diag.cwiseInverse().asDiagonal() * z.topRows(n());
  }

  const MatrixX<Scalar>& pi1() const { return dense_rep("pi1").pi1; }
  const MatrixX<Scalar>& pi1_left() const { return dense_rep("pi1_left").pi1_left; }

  RowVectorX<Scalar> pi1_row(Index j) const {
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->pi1.row(j);
    const auto& s = std::get<Structured>(rep_);
    return s.mixer->row(j).head(n()).cwiseProduct(s.diag.transpose());
  }

  // ||Pi1^j||_2 for every row j. O(n_tilde) for structured keys.
  VectorX<Scalar> pi1_row_l2_norms() const {
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->pi1.rowwise().norm();
    const auto& s = std::get<Structured>(rep_);
    const auto& v1 = s.mixer->v1();
    const auto& v2 = s.mixer->v2();
    const Index nn = n();
    const VectorX<Scalar> d2 = s.diag.cwiseAbs2();
    const Scalar w11 = (d2.array() * v1.head(nn).array().square()).sum();
    const Scalar w12 = (d2.array() * v1.head(nn).array() * v2.head(nn).array()).sum();
    const Scalar w22 = (d2.array() * v2.head(nn).array().square()).sum();
    VectorX<Scalar> out(n_tilde());
    for (Index j = 0; j < n_tilde(); ++j) {
      const auto f = s.mixer->row_form(j);
      Scalar sq = f.a1 * f.a1 * w11 + Scalar(2) * f.a1 * f.a2 * w12 + f.a2 * f.a2 * w22;
      if (f.k < nn) {
        const Scalar ak = f.a1 * v1(f.k) + f.a2 * v2(f.k);
        sq += d2(f.k) * (Scalar(1) - Scalar(2) * ak);
      }
      using std::sqrt;
      out(j) = sqrt(std::max(sq, Scalar(0)));
    }
    return out;
  }

  // Spectral norm of Pi1^L.
  Scalar pi1_left_norm2() const {
    if (const auto* d = std::get_if<Dense>(&rep_)) {
      return singular_values(d->pi1_left)(0);
    }
    return Scalar(1) / std::get<Structured>(rep_).diag.cwiseAbs().minCoeff();
  }

  // Dense Pi1, materialized when structured.
  MatrixX<Scalar> materialize_pi1() const {
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->pi1;
    return lift(MatrixX<Scalar>::Identity(n(), n()));
  }

  const std::shared_ptr<const OrthogonalMixer<Scalar>>& mixer() const {
    return std::get<Structured>(rep_).mixer;
  }
  const VectorX<Scalar>& diag() const { return std::get<Structured>(rep_).diag; }

 private:
  struct Dense {
    MatrixX<Scalar> pi1;
    MatrixX<Scalar> pi1_left;
    Index n() const { return pi1.cols(); }
    Index n_tilde() const { return pi1.rows(); }
  };
  struct Structured {
    std::shared_ptr<const OrthogonalMixer<Scalar>> mixer;
    VectorX<Scalar> diag;
    Index n() const { return diag.size(); }
    Index n_tilde() const { return mixer->size(); }
  };

  const Dense& dense_rep(const char* what) const {
    const auto* d = std::get_if<Dense>(&rep_);
    if (!d) throw DimensionError(std::string(what) + ": keys are structured, not dense");
    return *d;
  }

  std::variant<Dense, Structured> rep_;
};

// The server's secret: the immersion plus the kernel basis N1 of Pi1^L.
template <typename Scalar>
class ServerKeys {
 public:
  // Pi1^L is the Moore-Penrose left inverse; N1 an orthonormal basis of its kernel.
  static ServerKeys from_pi1(const MatrixX<Scalar>& pi1) {
    if (pi1.cols() < 1 || pi1.rows() <= pi1.cols()) {
      throw DimensionError("ServerKeys: need n_tilde > n >= 1");
    }
    return from_matrices(pi1, left_inverse(pi1), orthonormal_complement(pi1));
  }

  // Shape checks only; invariants are the caller's responsibility
  // (see validate_keys).
  static ServerKeys from_matrices(MatrixX<Scalar> pi1, MatrixX<Scalar> pi1_left,
                                  MatrixX<Scalar> n1) {
    const Index nt = pi1.rows();
    const Index n = pi1.cols();
    if (n < 1 || nt <= n) throw DimensionError("ServerKeys: need n_tilde > n >= 1");
    if (n1.rows() != nt || n1.cols() != nt - n) {
      throw DimensionError("ServerKeys: n1 must be n_tilde x (n_tilde - n)");
    }
    ServerKeys k(Immersion<Scalar>::dense(std::move(pi1), std::move(pi1_left)));
    k.kernel_ = std::move(n1);
    return k;
  }

  static ServerKeys structured(std::shared_ptr<const OrthogonalMixer<Scalar>> mixer,
                               VectorX<Scalar> diag) {
    ServerKeys k(Immersion<Scalar>::structured(mixer, std::move(diag)));
    k.kernel_ = std::move(mixer);
    return k;
  }

  const Immersion<Scalar>& immersion() const { return immersion_; }
  Index n() const { return immersion_.n(); }
  Index n_tilde() const { return immersion_.n_tilde(); }
  Index kernel_dim() const { return n_tilde() - n(); }
  bool is_dense() const { return immersion_.is_dense(); }

  const MatrixX<Scalar>& pi1() const { return immersion_.pi1(); }
  const MatrixX<Scalar>& pi1_left() const { return immersion_.pi1_left(); }
  const MatrixX<Scalar>& n1() const {
    const auto* m = std::get_if<MatrixX<Scalar>>(&kernel_);
    if (!m) throw DimensionError("n1: keys are structured, not dense");
    return *m;
  }

  // N1 * r, for a vector or a (n_tilde - n) x p matrix.
  MatrixX<Scalar> apply_kernel(const Eigen::Ref<const MatrixX<Scalar>>& r) const {
    if (r.rows() != kernel_dim()) {
      throw DimensionError("apply_kernel: expected " + std::to_string(kernel_dim()) +
                           " rows, got " + std::to_string(r.rows()));
    }
    if (const auto* m = std::get_if<MatrixX<Scalar>>(&kernel_)) return *m * r;
    MatrixX<Scalar> y = MatrixX<Scalar>::Zero(n_tilde(), r.cols());
    y.bottomRows(kernel_dim()) = r;
    return mixer().apply(y);
  }

  RowVectorX<Scalar> n1_row(Index j) const {
    if (const auto* m = std::get_if<MatrixX<Scalar>>(&kernel_)) return m->row(j);
    return mixer().row(j).tail(kernel_dim());
  }

  // ||N1^j||_2 for every row j. O(n_tilde) for structured keys.
  VectorX<Scalar> n1_row_l2_norms() const {
    if (const auto* m = std::get_if<MatrixX<Scalar>>(&kernel_)) {
      return m->rowwise().norm();
    }
    const auto& mx = mixer();
    const Index nn = n();
    const Index kd = kernel_dim();
    const auto t1 = mx.v1().tail(kd);
    const auto t2 = mx.v2().tail(kd);
    const Scalar s11 = t1.squaredNorm();
    const Scalar s12 = t1.dot(t2);
    const Scalar s22 = t2.squaredNorm();
    VectorX<Scalar> out(n_tilde());
    for (Index j = 0; j < n_tilde(); ++j) {
      const auto f = mx.row_form(j);
      Scalar sq = f.a1 * f.a1 * s11 + Scalar(2) * f.a1 * f.a2 * s12 + f.a2 * f.a2 * s22;
      if (f.k >= nn) {
        const Scalar ak = f.a1 * mx.v1()(f.k) + f.a2 * mx.v2()(f.k);
        sq += Scalar(1) - Scalar(2) * ak;
      }
      using std::sqrt;
      out(j) = sqrt(std::max(sq, Scalar(0)));
    }
    return out;
  }

  MatrixX<Scalar> materialize_n1() const {
    if (const auto* m = std::get_if<MatrixX<Scalar>>(&kernel_)) return *m;
    return apply_kernel(MatrixX<Scalar>::Identity(kernel_dim(), kernel_dim()));
  }

 private:
  explicit ServerKeys(Immersion<Scalar> im) : immersion_(std::move(im)) {}

  const OrthogonalMixer<Scalar>& mixer() const {
    return *std::get<std::shared_ptr<const OrthogonalMixer<Scalar>>>(kernel_);
  }

  Immersion<Scalar> immersion_;
  std::variant<MatrixX<Scalar>, std::shared_ptr<const OrthogonalMixer<Scalar>>> kernel_;
};

// The aggregator's secret: Pi2 (1 x p), its right inverse (shared with
// clients) and the basis N2 ((p-1) x p) of the left kernel of Pi2^R.
template <typename Scalar>
class AggregatorKeys {
 public:
  static AggregatorKeys from_pi2(const RowVectorX<Scalar>& pi2) {
    if (pi2.size() < 2) throw DimensionError("AggregatorKeys: p must be >= 2");
    const Scalar sq = pi2.squaredNorm();
    if (sq == Scalar(0)) throw DimensionError("AggregatorKeys: pi2 is zero");
    VectorX<Scalar> right = pi2.transpose() / sq;
    MatrixX<Scalar> n2 = orthonormal_complement(right).transpose();
    return from_matrices(pi2, std::move(right), std::move(n2));
  }

  static AggregatorKeys from_matrices(RowVectorX<Scalar> pi2, VectorX<Scalar> pi2_right,
                                      MatrixX<Scalar> n2) {
    const Index p = pi2.size();
    if (p < 2) throw DimensionError("AggregatorKeys: p must be >= 2");
    if (pi2_right.size() != p || n2.rows() != p - 1 || n2.cols() != p) {
      throw DimensionError("AggregatorKeys: inconsistent shapes");
    }
    AggregatorKeys k;
    k.pi2_ = std::move(pi2);
    k.pi2_right_ = std::move(pi2_right);
    k.n2_ = std::move(n2);
    return k;
  }

  Index p() const { return pi2_.size(); }
  const RowVectorX<Scalar>& pi2() const { return pi2_; }
  const VectorX<Scalar>& pi2_right() const { return pi2_right_; }
  const MatrixX<Scalar>& n2() const { return n2_; }

 private:
  AggregatorKeys() = default;
  RowVectorX<Scalar> pi2_;
  VectorX<Scalar> pi2_right_;
  MatrixX<Scalar> n2_;
};

namespace detail {

inline void check_server_config(const KeyGenConfig& cfg) {
  if (cfg.n < 1 || cfg.n_tilde <= cfg.n) {
    throw DimensionError("gen_server_keys: need n_tilde > n >= 1 (n=" +
                         std::to_string(cfg.n) + ", n_tilde=" +
                         std::to_string(cfg.n_tilde) + ")");
  }
  if (!(cfg.scale > 0) || !std::isfinite(cfg.scale)) {
    throw InvalidArgs("gen_server_keys: scale must be positive");
  }
  if (!(cfg.max_condition >= 1)) {
    throw InvalidArgs("gen_server_keys: max_condition must be >= 1");
  }
}

template <typename Scalar>
ServerKeys<Scalar> gen_dense_server_keys(const KeyGenConfig& cfg) {
  for (int attempt = 0; attempt <= kKeyGenRetries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, Stream::kKeys, 1, attempt));
    MatrixX<Scalar> pi1(cfg.n_tilde, cfg.n);
    for (Index i = 0; i < pi1.rows(); ++i) {
      for (Index j = 0; j < pi1.cols(); ++j) pi1(i, j) = Scalar(rng.normal());
    }
    for (Index i = 0; i < pi1.rows(); ++i) {
      pi1.row(i) *= Scalar(cfg.scale) / pi1.row(i).template lpNorm<1>();
    }
    if (!(condition_number(pi1) <= Scalar(cfg.max_condition))) continue;
    auto keys = ServerKeys<Scalar>::from_pi1(pi1);
    if (keys.n1().rowwise().norm().minCoeff() <= Scalar(kMinKernelNorm)) continue;
    return keys;
  }
  throw GenerationFailure("gen_server_keys: condition/zero-row constraints unmet after " +
                          std::to_string(kKeyGenRetries) + " regenerations");
}

template <typename Scalar>
ServerKeys<Scalar> gen_structured_server_keys(const KeyGenConfig& cfg) {
  const double kappa = std::min(cfg.max_condition, 10.0);
  for (int attempt = 0; attempt <= kKeyGenRetries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, Stream::kKeys, 2, attempt));
    std::vector<Index> perm(static_cast<std::size_t>(cfg.n_tilde));
    std::iota(perm.begin(), perm.end(), Index{0});
    rng.shuffle(perm.begin(), perm.end());
    VectorX<Scalar> v1(cfg.n_tilde), v2(cfg.n_tilde);
    for (Index i = 0; i < cfg.n_tilde; ++i) v1(i) = Scalar(rng.normal());
    for (Index i = 0; i < cfg.n_tilde; ++i) v2(i) = Scalar(rng.normal());
    VectorX<Scalar> diag(cfg.n);
    for (Index i = 0; i < cfg.n; ++i) {
      diag(i) = Scalar(cfg.scale * std::exp(rng.uniform(-0.5, 0.5) * std::log(kappa)));
    }
    auto mixer = std::make_shared<const OrthogonalMixer<Scalar>>(
        std::move(perm), std::move(v1), std::move(v2));
    auto keys = ServerKeys<Scalar>::structured(std::move(mixer), std::move(diag));
    if (keys.n1_row_l2_norms().minCoeff() <= Scalar(kMinKernelNorm)) continue;
    return keys;
  }
  throw GenerationFailure("gen_server_keys: zero kernel rows after " +
                          std::to_string(kKeyGenRetries) + " regenerations");
}

}  // namespace detail

template <typename Scalar = double>
ServerKeys<Scalar> gen_server_keys(const KeyGenConfig& cfg) {
  detail::check_server_config(cfg);
  return cfg.dense() ? detail::gen_dense_server_keys<Scalar>(cfg)
                     : detail::gen_structured_server_keys<Scalar>(cfg);
}

template <typename Scalar = double>
AggregatorKeys<Scalar> gen_aggregator_keys(const KeyGenConfig& cfg) {
  if (cfg.p < 2) {
    throw DimensionError("gen_aggregator_keys: p must be >= 2 (got " +
                         std::to_string(cfg.p) + ")");
  }
  if (!(cfg.scale > 0)) throw InvalidArgs("gen_aggregator_keys: scale must be positive");
  for (int attempt = 0; attempt <= kKeyGenRetries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, Stream::kKeys, 3, attempt));
    RowVectorX<Scalar> pi2(cfg.p);
    for (Index m = 0; m < cfg.p; ++m) pi2(m) = Scalar(rng.normal());
    pi2 *= Scalar(cfg.scale) / pi2.cwiseAbs().maxCoeff();
    auto keys = AggregatorKeys<Scalar>::from_pi2(pi2);
    if (keys.n2().colwise().norm().minCoeff() <= Scalar(kMinKernelNorm)) continue;
    return keys;
  }
  throw GenerationFailure("gen_aggregator_keys: zero kernel column after " +
                          std::to_string(kKeyGenRetries) + " regenerations");
}

using Immersiond = Immersion<double>;
using ServerKeysd = ServerKeys<double>;
using AggregatorKeysd = AggregatorKeys<double>;

}  // namespace sifl

#endif  // SIFL_CODING_KEYS_HPP_
