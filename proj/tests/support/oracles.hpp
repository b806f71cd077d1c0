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

// Independent reference implementations for tests. Nothing here calls into
// the library under test, so agreement is evidence rather than tautology.

#ifndef SIFL_TESTS_SUPPORT_ORACLES_HPP_
#define SIFL_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sifl::oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Solves A X = B by Gaussian elimination with partial pivoting.
inline Mat gauss_solve(Mat a, Mat b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    }
    if (a(piv, col) == 0.0) throw std::runtime_error("gauss_solve: singular");
    a.row(col).swap(a.row(piv));
    b.row(col).swap(b.row(piv));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  Mat x(n, b.cols());
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      double s = b(r, c);
      for (Eigen::Index k = r + 1; k < n; ++k) s -= a(r, k) * x(k, c);
      x(r, c) = s / a(r, r);
    }
  }
  return x;
}

// (A^T A)^{-1} A^T via the normal equations.
inline Mat normal_equation_pinv(const Mat& a) {
  Mat ata(a.cols(), a.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      double s = 0;
      for (Eigen::Index k = 0; k < a.rows(); ++k) s += a(k, i) * a(k, j);
      ata(i, j) = s;
    }
  }
  return gauss_solve(ata, a.transpose());
}

// erfc from the Maclaurin series of erf for |x| < 1 and a Lentz continued
// fraction beyond, where 1 - erf would cancel.
inline double erfc(double x) {
  if (x < 0) return 2.0 - erfc(-x);
  if (x < 1.0) {
    double term = x, sum = x;
    for (int k = 1; k < 200; ++k) {
      term *= -x * x / k;
      const double add = term / (2 * k + 1);
      sum += add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return 1.0 - 2.0 / std::sqrt(M_PI) * sum;
  }
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  const double tiny = 1e-300;
  double f = x, c = x, d = 0;
  for (int k = 1; k < 100000; ++k) {
    const double ak = 0.5 * k;
    d = x + ak * d;
    if (d == 0) d = tiny;
    c = x + ak / c;
    if (c == 0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / std::sqrt(M_PI) / f;
}

inline double q(double x) { return 0.5 * erfc(x / std::sqrt(2.0)); }

// Plain bisection of the decreasing Q on [-40, 40].
inline double q_inverse(double p) {
  double lo = -40, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q(mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Central finite-difference gradient.
inline Vec central_gradient(const std::function<double(const Vec&)>& f, const Vec& w,
                            double h = 1e-5) {
  Vec g(w.size());
  Vec x = w;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double keep = x(i);
    x(i) = keep + h;
    const double up = f(x);
    x(i) = keep - h;
    const double down = f(x);
    x(i) = keep;
    g(i) = (up - down) / (2 * h);
  }
  return g;
}

inline Vec row_lp_norms(const Mat& m, int p) {
  Vec out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    double s = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      s += p == 1 ? std::fabs(m(r, c)) : m(r, c) * m(r, c);
    }
    out(r) = p == 1 ? s : std::sqrt(s);
  }
  return out;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double m = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  }
  return m;
}

// Property-test generator on its own engine, unrelated to the library's Rng.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>()(eng_); }
  Vec vec(Eigen::Index n, double scale = 1.0) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * normal();
    return v;
  }
  Mat mat(Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * normal();
    return m;
  }
  std::uint64_t seed() { return eng_(); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sifl::oracle

#endif  // SIFL_TESTS_SUPPORT_ORACLES_HPP_
