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
 * @file states.hpp
 * Coisometries and maximally entangled states (MES).
 *
 * A unit vector u in X (x) Y is maximally entangled iff u = vec(A)/sqrt(m)
 * for a coisometry A : Y -> X (A A^* = 1_m). The map pi sends any nonzero A
 * to vec(A) vec(A)^* / tr(A A^*), which is an MES exactly when A is a
 * multiple of a coisometry.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "meskit/tensor_core.hpp"

namespace meskit {

inline bool is_coisometry(const Matrix& a, double tol = kDefaultTol) {
  if (a.rows() > a.cols()) return false;
  return (a * a.adjoint() - Matrix::Identity(a.rows(), a.rows())).norm() < tol;
}

/// An m x n matrix with A A^* = 1_m.
class Coisometry {
 public:
  explicit Coisometry(Matrix a, double tol = kDefaultTol) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.rows() > a_.cols()) {
      throw DimensionError("coisometry must be m x n with 1 <= m <= n");
    }
    if (!is_coisometry(a_, tol)) throw NotUnitaryError("matrix is not a coisometry (A A^* != 1)");
  }

  const Matrix& matrix() const noexcept { return a_; }
  int m() const noexcept { return static_cast<int>(a_.rows()); }
  int n() const noexcept { return static_cast<int>(a_.cols()); }
  Dims dims() const { return Dims::from_mn(m(), n()); }

 private:
  Matrix a_;
};

/// pi_A = vec(A) vec(A)^* / tr(A A^*).
inline Matrix pi(const Matrix& a) {
  const double weight = a.squaredNorm();
  if (weight == 0.0) throw ZeroOperatorError("pi: operator is zero");
  const Vector v = vec(a);
  return outer(v, v) / weight;
}

inline Matrix pi(const Coisometry& a) { return pi(a.matrix()); }

/// Rank-1, PSD, trace-1 and tr_Y(M) = 1_m / m, all within tol.
inline bool is_mes(const Matrix& op, const Dims& dims, double tol = kDefaultTol) {
  if (op.rows() != dims.mn() || op.cols() != dims.mn()) {
    throw DimensionError("is_mes: operator does not match dims");
  }
  if (!op.allFinite() || !is_hermitian(op, tol)) return false;
  const RankOneFactor f = rank_one_factor(op, tol);
  if (!(f.residual < tol)) return false;
  const Matrix reduced = partial_trace_y(op, dims);
  const Matrix target = Matrix::Identity(dims.m(), dims.m()) / static_cast<double>(dims.m());
  return (reduced - target).norm() < tol;
}

inline Coisometry random_coisometry(int m, int n, Rng& rng) {
  if (m > n) throw DimensionError("random_coisometry requires m <= n");
  return Coisometry(haar_unitary(n, rng).topRows(m));
}

inline Coisometry random_coisometry(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_coisometry(dims.m(), dims.n(), rng);
}

inline Matrix random_mes(const Dims& dims, std::uint64_t seed) {
  return pi(random_coisometry(dims, seed));
}

/// Splits an n x n unitary into its k consecutive m-row blocks, which are
/// mutually orthogonal coisometries.
inline std::vector<Coisometry> row_blocks(const Matrix& unitary, const Dims& dims) {
  if (unitary.rows() != dims.n() || unitary.cols() != dims.n()) {
    throw DimensionError("row_blocks: unitary does not match dims");
  }
  std::vector<Coisometry> family;
  family.reserve(dims.k());
  for (int j = 0; j < dims.k(); ++j) {
    family.emplace_back(unitary.middleRows(j * dims.m(), dims.m()));
  }
  return family;
}

/// k mutually orthogonal coisometries: the m-row blocks of a Haar unitary.
inline std::vector<Coisometry> orthogonal_family(const Dims& dims, std::uint64_t seed) {
  return row_blocks(haar_unitary(dims.n(), seed), dims);
}

/// A B^* = 0 (and B A^* = 0) within tol.
inline bool are_orthogonal(const Coisometry& a, const Coisometry& b, double tol = kDefaultTol) {
  if (a.m() != b.m() || a.n() != b.n()) throw DimensionError("are_orthogonal: shape mismatch");
  const bool forward = (a.matrix() * b.matrix().adjoint()).norm() < tol;
  const bool backward = (b.matrix() * a.matrix().adjoint()).norm() < tol;
  return forward && backward;
}

/// Canonical coisometry A with pi_A = M: recovered from the leading
/// eigenvector, rescaled so that the mean diagonal of A A^* is 1, and
/// phase-gauged.
inline Coisometry representative(const Matrix& op, const Dims& dims, double tol = kDefaultTol) {
  if (!is_mes(op, dims, tol)) throw NotMESError("representative: operator is not an MES");
  const RankOneFactor f = rank_one_factor(op, tol);
  Matrix a = unvec(f.v, dims.m(), dims.n());
  const double mean_diag = (a * a.adjoint()).diagonal().real().mean();
  a /= std::sqrt(mean_diag);
  a = phase_aligned(a);
  // The input is only an MES to within tol; accept the matching coisometry slack.
  return Coisometry(std::move(a), std::max(tol, kDefaultTol) * 10.0);
}

}  // namespace meskit
