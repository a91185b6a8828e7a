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
 * @file extension.hpp
 * Blockwise extension of a preserver on L(X (x) Y) to L(Y (x) Y), Y = C^k (x) X,
 * and the block sign / block permutation unitaries it commutes with.
 *
 * Index convention on Y (x) Y = (C^k (x) X) (x) Y: (block b, x, y) maps to
 * b * mn + x * n + y, so an operator on Y (x) Y is a k x k block matrix whose
 * (p, q) block is an operator on X (x) Y in the usual product basis.
 */
#pragma once

#include <cstdint>
#include <string>

#include "meskit/superop.hpp"

namespace meskit {

struct ExtendedSuperoperator {
  Superoperator op;  // acts on L(Y (x) Y); op.dims == Dims(n, 1)
  Dims base;         // dims of the original X (x) Y
  Sigma sigma;
};

/// Phi~(M)_pq = Phi(M_pq) for Identity and Phi(M_qp) for Transpose.
inline ExtendedSuperoperator extend(const Superoperator& phi, Sigma sigma) {
  const Dims& base = phi.dims;
  if (base.k() < 2) throw DimensionError("extend requires k >= 2");
  const int k = base.k();
  const int mn = base.mn();
  const int big = k * mn;  // n^2
  const Dims ext_dims(base.n(), 1);
  Matrix mat = Matrix::Zero(ext_dims.superop_side(), ext_dims.superop_side());
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      const int op_row = sigma == Sigma::Identity ? p : q;
      const int op_col = sigma == Sigma::Identity ? q : p;
      for (int r = 0; r < mn; ++r) {
        for (int c = 0; c < mn; ++c) {
          const Eigen::Index in = static_cast<Eigen::Index>(p * mn + r) * big + (q * mn + c);
          for (int ro = 0; ro < mn; ++ro) {
            for (int co = 0; co < mn; ++co) {
              const Eigen::Index out =
                  static_cast<Eigen::Index>(op_row * mn + ro) * big + (op_col * mn + co);
              mat(out, in) = phi.matrix(ro * mn + co, r * mn + c);
            }
          }
        }
      }
    }
  }
  return ExtendedSuperoperator{Superoperator(std::move(mat), ext_dims), base, sigma};
}

/// P_j = (1_k - 2 E_jj) (x) 1_X on Y, j in [1, k].
inline Matrix p_operator(int j, const Dims& dims) {
  if (j < 1 || j > dims.k()) {
    throw IndexError("p_operator: j must lie in [1, " + std::to_string(dims.k()) + "]");
  }
  Matrix sign = Matrix::Identity(dims.k(), dims.k());
  sign(j - 1, j - 1) = -1.0;
  return kron(sign, Matrix::Identity(dims.m(), dims.m()));
}

/// Q_pq = (T_pq (x) 1_X) (x) 1_Y on Y (x) Y, 1 <= p < q <= k.
inline Matrix q_operator(int p, int q, const Dims& dims) {
  if (p < 1 || q > dims.k() || p >= q) {
    throw IndexError("q_operator: need 1 <= p < q <= " + std::to_string(dims.k()));
  }
  Matrix t = Matrix::Identity(dims.k(), dims.k());
  t(p - 1, p - 1) = 0.0;
  t(q - 1, q - 1) = 0.0;
  t(p - 1, q - 1) = 1.0;
  t(q - 1, p - 1) = 1.0;
  return kron(kron(t, Matrix::Identity(dims.m(), dims.m())),
              Matrix::Identity(dims.n(), dims.n()));
}

/// ||Psi(W M W^*) - W Psi(M) W^*||_F for one operator M.
inline double commutation_residual_at(const Superoperator& psi, const Matrix& w, const Matrix& op) {
  const Matrix lhs = apply(psi, w * op * w.adjoint());
  const Matrix rhs = w * apply(psi, op) * w.adjoint();
  return (lhs - rhs).norm();
}

/// Worst commutation residual of Psi against ad_W over random MES samples.
inline double commutation_residual(const Superoperator& psi, const Matrix& w, int num_samples,
                                   std::uint64_t seed) {
  if (w.rows() != psi.dims.mn() || w.cols() != psi.dims.mn()) {
    throw DimensionError("commutation_residual: W does not match superoperator dims");
  }
  if (!is_unitary(w, 1e-10)) throw NotUnitaryError("commutation_residual: W is not unitary");
  double worst = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    const Matrix sample = random_mes(psi.dims, derive_seed(seed, static_cast<std::uint64_t>(i)));
    worst = std::max(worst, commutation_residual_at(psi, w, sample));
  }
  return worst;
}

inline bool commutes_with_ad(const Superoperator& psi, const Matrix& w, int num_samples,
                             double tol, std::uint64_t seed) {
  return commutation_residual(psi, w, num_samples, seed) < tol;
}

inline bool commutes_with_ad(const ExtendedSuperoperator& ext, const Matrix& w, int num_samples,
                             double tol, std::uint64_t seed) {
  return commutes_with_ad(ext.op, w, num_samples, tol, seed);
}

/// A unitary A on Y with pi_A separating ad_{P_1 (x) 1} o Psi from
/// Psi o ad_{P_1 (x) 1} for Psi = ad_{U (x) V} o sigma o S on L(Y (x) Y):
/// U A^T (Identity) or U A^* (Transpose) equals
/// 1/sqrt2 [[1, 1], [1, -1]] (x) 1_X (+) 1_{X^{k-2}}.
inline Matrix switch_commutation_witness(const Matrix& u, Sigma sigma, const Dims& base) {
  if (base.k() < 2) throw DimensionError("switch_commutation_witness requires k >= 2");
  const int n = base.n();
  if (u.rows() != n || u.cols() != n) throw DimensionError("witness: U must be n x n");
  Matrix target = Matrix::Identity(n, n);
  Matrix hadamard(2, 2);
  hadamard << 1.0, 1.0, 1.0, -1.0;
  hadamard /= std::sqrt(2.0);
  target.topLeftCorner(2 * base.m(), 2 * base.m()) =
      kron(hadamard, Matrix::Identity(base.m(), base.m()));
  const Matrix rhs = u.adjoint() * target;  // A^T or A^*
  return sigma == Sigma::Identity ? Matrix(rhs.transpose()) : Matrix(rhs.adjoint());
}

}  // namespace meskit
