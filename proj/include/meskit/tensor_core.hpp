// Copyright 2026 The meskit Authors
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

/**
 * @file tensor_core.hpp
 * Dense complex linear algebra on bipartite spaces X (dim m) and Y (dim n).
 *
 * Conventions used throughout the library:
 *  - vec stacks the ROWS of a matrix, so vec(x y^T) = x (x) y and
 *    vec(A X B) = (A (x) B^T) vec(X).
 *  - The product basis of X (x) Y is indexed as x * n + y.
 *  - Global phases are fixed by making the largest-magnitude entry real and
 *    positive; near-ties go to the lowest row-major index.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include "meskit/errors.hpp"

namespace meskit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Default tolerance for structural predicates, relative to the Frobenius
/// norm of the operand.
inline constexpr double kDefaultTol = 1e-9;

/// Relative slack under which two magnitudes count as tied when picking the
/// phase-gauge entry.
inline constexpr double kGaugeTieSlack = 1e-10;

/// Dimensions of X = C^m and Y = C^n with n = k * m.
class Dims {
 public:
  Dims(int m, int k) : m_(m), k_(k) {
    if (m < 1 || k < 1) {
      throw DimensionError("dims require m >= 1 and k >= 1, got m=" + std::to_string(m) +
                           " k=" + std::to_string(k));
    }
  }

  /// Builds dims from (m, n); n must be a positive multiple of m.
  static Dims from_mn(int m, int n) {
    if (m < 1 || n < 1 || n % m != 0) {
      throw DimensionError("n must be a positive multiple of m, got m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
    }
    return Dims(m, n / m);
  }

  int m() const noexcept { return m_; }
  int k() const noexcept { return k_; }
  int n() const noexcept { return k_ * m_; }
  int mn() const noexcept { return m_ * n(); }
  /// Side of a superoperator matrix on L(X (x) Y).
  int superop_side() const noexcept { return mn() * mn(); }

  friend bool operator==(const Dims& a, const Dims& b) { return a.m_ == b.m_ && a.k_ == b.k_; }

 private:
  int m_;
  int k_;
};

// ---------------------------------------------------------------------------
// Seeds and sampling

/// splitmix64 finalizer; used to derive independent streams from one seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `index` of `seed`. Sample i of any sampling loop uses
/// derive_seed(seed, i) so results never depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix_seed(mix_seed(seed) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

/// Standard complex Gaussian entries, E|z|^2 = 1, filled in row-major order.
inline Matrix complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  Matrix z(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) * scale;
    }
  }
  return z;
}

/// Uniformly random unit vector in C^d.
inline Vector random_unit_vector(int d, Rng& rng) {
  Vector v = complex_gaussian(d, 1, rng).col(0);
  return v / v.norm();
}

/// Haar-distributed d x d unitary: QR of a Ginibre matrix with the phases of
/// diag(R) folded back into Q.
inline Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw DimensionError("haar_unitary requires d >= 1");
  const Matrix z = complex_gaussian(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline Matrix haar_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(d, rng);
}

// ---------------------------------------------------------------------------
// Vectorization and products

/// Row-stacking vectorization: index i * cols + j holds a(i, j).
inline Vector vec(const Matrix& a) {
  Vector v(a.rows() * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  }
  return v;
}

inline Matrix unvec(const Vector& v, int rows, int cols) {
  if (rows < 1 || cols < 1 || v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) +
                         " cannot be reshaped to " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = v(static_cast<Eigen::Index>(i) * cols + j);
  }
  return a;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Outer product u v^*.
inline Matrix outer(const Vector& u, const Vector& v) { return u * v.adjoint(); }

/// tr_Y on L(C^m (x) C^n): the linear map with tr_Y(A (x) B) = tr(B) A.
inline Matrix partial_trace_y(const Matrix& op, int m, int n) {
  const Eigen::Index side = static_cast<Eigen::Index>(m) * n;
  if (op.rows() != side || op.cols() != side) {
    throw DimensionError("partial_trace_y: expected a " + std::to_string(side) + "x" +
                         std::to_string(side) + " operator");
  }
  Matrix out = Matrix::Zero(m, m);
  for (int x = 0; x < m; ++x) {
    for (int xp = 0; xp < m; ++xp) {
      Complex acc = 0.0;
      for (int y = 0; y < n; ++y) acc += op(x * n + y, xp * n + y);
      out(x, xp) = acc;
    }
  }
  return out;
}

inline Matrix partial_trace_y(const Matrix& op, const Dims& dims) {
  return partial_trace_y(op, dims.m(), dims.n());
}

// ---------------------------------------------------------------------------
// Phase gauge and comparisons

/// Row-major index of the largest-magnitude entry, near-ties to the lowest.
inline Eigen::Index gauge_index(const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a(i, j)));
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) >= best * (1.0 - kGaugeTieSlack)) return i * a.cols() + j;
    }
  }
  return 0;
}

/// Unit scalar c such that c * a has its gauge entry real positive; 1 for a = 0.
inline Complex gauge_factor(const Matrix& a) {
  if (a.size() == 0) return 1.0;
  const Eigen::Index idx = gauge_index(a);
  const Complex z = a(idx / a.cols(), idx % a.cols());
  const double mag = std::abs(z);
  return mag > 0.0 ? std::conj(z) / mag : Complex(1.0);
}

inline Matrix phase_aligned(const Matrix& a) { return gauge_factor(a) * a; }

/// min over theta of || a - e^{i theta} b ||_F.
inline double phase_distance(const Matrix& a, const Matrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0);
  return (a - phase * b).norm();
}

inline bool is_unitary(const Matrix& u, double tol = kDefaultTol) {
  if (u.rows() != u.cols()) return false;
  return (u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())).norm() <
         tol * std::max(1.0, std::sqrt(static_cast<double>(u.rows())));
}

inline bool is_hermitian(const Matrix& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

// ---------------------------------------------------------------------------
// Factorizations

struct RankOneFactor {
  Vector v;
  double residual = 0.0;
};

/// Best rank-1 PSD approximation v v^* of a Hermitian matrix, phase-gauged.
/// residual = ||M - v v^*||_F.
inline RankOneFactor rank_one_factor(const Matrix& op, double tol = kDefaultTol) {
  if (op.rows() != op.cols()) throw DimensionError("rank_one_factor: operator is not square");
  if (!is_hermitian(op, tol)) {
    throw NotHermitianError("rank_one_factor: operator is not Hermitian within tolerance");
  }
  RankOneFactor out;
  out.v = Vector::Zero(op.rows());
  const double norm = op.norm();
  if (norm == 0.0) return out;

  const Matrix herm = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
  const Eigen::Index top = herm.rows() - 1;
  const double lambda = eig.eigenvalues()(top);
  if (lambda > 0.0) {
    Matrix v = std::sqrt(lambda) * eig.eigenvectors().col(top);
    out.v = phase_aligned(v).col(0);
  }
  out.residual = (op - outer(out.v, out.v)).norm();
  return out;
}

struct KronFactors {
  Matrix u;
  Matrix v;
  double residual = 0.0;
};

/// Nearest Kronecker product W ~ U (x) V (U: m x m, V: n x n) by the
/// rearrangement-to-rank-1 reduction. Scale split ||U||_F = sqrt(m); phase
/// gauged on U.
inline KronFactors nearest_kron_factor(const Matrix& w, int m, int n) {
  const Eigen::Index side = static_cast<Eigen::Index>(m) * n;
  if (w.rows() != side || w.cols() != side) {
    throw DimensionError("nearest_kron_factor: expected a " + std::to_string(side) + "x" +
                         std::to_string(side) + " matrix");
  }
  // R(i1 m + i2, j1 n + j2) = W(i1 n + j1, i2 n + j2), so U (x) V <-> vec(U) vec(V)^T.
  Matrix r(m * m, n * n);
  for (int i1 = 0; i1 < m; ++i1) {
    for (int i2 = 0; i2 < m; ++i2) {
      for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) r(i1 * m + i2, j1 * n + j2) = w(i1 * n + j1, i2 * n + j2);
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  KronFactors out;
  const double s0 = svd.singularValues()(0);
  if (s0 == 0.0) {
    out.u = Matrix::Zero(m, m);
    out.v = Matrix::Zero(n, n);
    out.residual = w.norm();
    return out;
  }
  const double root_m = std::sqrt(static_cast<double>(m));
  out.u = unvec(root_m * svd.matrixU().col(0), m, m);
  out.v = unvec((s0 / root_m) * svd.matrixV().col(0).conjugate(), n, n);
  const Complex c = gauge_factor(out.u);
  out.u *= c;
  out.v *= std::conj(c);
  out.residual = (w - kron(out.u, out.v)).norm();
  return out;
}

inline KronFactors nearest_kron_factor(const Matrix& w, const Dims& dims) {
  return nearest_kron_factor(w, dims.m(), dims.n());
}

/// Unitary polar factor of a square matrix.
inline Matrix polar_unitary(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace meskit
