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
 * @file superop.hpp
 * Superoperators on L(X (x) Y) and the canonical MES-preserver families.
 *
 * A superoperator is stored as the (mn)^2 x (mn)^2 matrix acting on
 * row-vectorized operators: vec(Phi(M)) = matrix * vec(M). Constructors
 * define their natural extension to all of L(X (x) Y); classification only
 * ever reads values on the span of MES.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meskit/states.hpp"

namespace meskit {

/// Whether a preserver involves the identity or the transpose (in the vec
/// product basis) before unitary conjugation.
enum class Sigma { Identity, Transpose };

inline std::string to_string(Sigma s) { return s == Sigma::Identity ? "identity" : "transpose"; }

inline Sigma parse_sigma(std::string_view text) {
  if (text == "identity") return Sigma::Identity;
  if (text == "transpose") return Sigma::Transpose;
  throw ParseError("sigma must be \"identity\" or \"transpose\", got \"" + std::string(text) + "\"");
}

struct Superoperator {
  Superoperator(Matrix m, Dims d) : matrix(std::move(m)), dims(d) {
    if (matrix.rows() != dims.superop_side() || matrix.cols() != dims.superop_side()) {
      throw DimensionError("superoperator matrix must be " + std::to_string(dims.superop_side()) +
                           "x" + std::to_string(dims.superop_side()));
    }
  }

  Matrix matrix;
  Dims dims;
};

// A function object rather than a function: Eigen matrices of std::complex
// pull namespace std into ADL, where std::apply would otherwise win.
struct ApplyFn {
  Matrix operator()(const Superoperator& phi, const Matrix& op) const {
    const int side = phi.dims.mn();
    if (op.rows() != side || op.cols() != side) {
      throw DimensionError("apply: operator does not match superoperator dims");
    }
    return unvec(phi.matrix * vec(op), side, side);
  }
};
inline constexpr ApplyFn apply{};

inline Superoperator identity_superop(const Dims& dims) {
  return Superoperator(Matrix::Identity(dims.superop_side(), dims.superop_side()), dims);
}

/// a o b.
inline Superoperator compose(const Superoperator& a, const Superoperator& b) {
  if (!(a.dims == b.dims)) throw DimensionError("compose: dims mismatch");
  return Superoperator(a.matrix * b.matrix, a.dims);
}

/// Matrix of X -> W X W^* on row-vectorized operators: W (x) conj(W).
inline Matrix conjugation_matrix(const Matrix& w) { return kron(w, Matrix(w.conjugate())); }

/// Matrix of X -> X^T on row-vectorized side x side operators.
inline Matrix transpose_matrix(int side) {
  const int total = side * side;
  Matrix t = Matrix::Zero(total, total);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) t(j * side + i, i * side + j) = 1.0;
  }
  return t;
}

/// The basis transpose tau on L(X (x) Y).
inline Superoperator transpose_superop(const Dims& dims) {
  return Superoperator(transpose_matrix(dims.mn()), dims);
}

/// Permutation x (x) y -> y (x) x on C^d (x) C^d.
inline Matrix flip_matrix(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) f(b * d + a, a * d + b) = 1.0;
  }
  return f;
}

/// The switch operator A (x) B -> B (x) A on L(C^d (x) C^d).
inline Superoperator switch_superop(int d) {
  return Superoperator(conjugation_matrix(flip_matrix(d)), Dims(d, 1));
}

namespace detail {
inline void require_unitary(const Matrix& u, const char* name) {
  if (!is_unitary(u, 1e-10)) throw NotUnitaryError(std::string(name) + " is not unitary");
}
}  // namespace detail

/// X -> (U (x) V) X^sigma (U (x) V)^*.
inline Superoperator make_adjoint_preserver(const Matrix& u, const Matrix& v, Sigma sigma) {
  detail::require_unitary(u, "U");
  detail::require_unitary(v, "V");
  const Dims dims = Dims::from_mn(static_cast<int>(u.rows()), static_cast<int>(v.rows()));
  Matrix mat = conjugation_matrix(kron(u, v));
  if (sigma == Sigma::Transpose) mat = mat * transpose_matrix(dims.mn());
  return Superoperator(std::move(mat), dims);
}

/// A (x) B -> (U (x) V) (B (x) A)^sigma (U (x) V)^*, for X = Y only.
inline Superoperator make_swap_preserver(const Matrix& u, const Matrix& v, Sigma sigma) {
  if (u.rows() != v.rows()) {
    throw DimensionError("make_swap_preserver requires U and V of equal size (X = Y)");
  }
  detail::require_unitary(u, "U");
  detail::require_unitary(v, "V");
  const int d = static_cast<int>(u.rows());
  Matrix mat = conjugation_matrix(kron(u, v));
  if (sigma == Sigma::Transpose) mat = mat * transpose_matrix(d * d);
  mat = mat * conjugation_matrix(flip_matrix(d));
  return Superoperator(std::move(mat), Dims(d, 1));
}

/// X -> tr(X) rho for an MES rho; preserves MES but is not invertible.
inline Superoperator make_trace_preserver(const Matrix& rho, const Dims& dims,
                                          double tol = kDefaultTol) {
  if (!is_mes(rho, dims, tol)) throw NotMESError("make_trace_preserver: rho is not an MES");
  const Vector identity = vec(Matrix::Identity(dims.mn(), dims.mn()));
  return Superoperator(vec(rho) * identity.transpose(), dims);
}

/// A preserver built from Haar-random U, V, kept with its ground truth.
struct PreserverSample {
  Superoperator phi;
  Matrix u;
  Matrix v;
  Sigma sigma;
};

inline PreserverSample random_adjoint_preserver(const Dims& dims, Sigma sigma, std::uint64_t seed) {
  Rng rng(seed);
  Matrix u = haar_unitary(dims.m(), rng);
  Matrix v = haar_unitary(dims.n(), rng);
  Superoperator phi = make_adjoint_preserver(u, v, sigma);
  return PreserverSample{std::move(phi), std::move(u), std::move(v), sigma};
}

/// Haar-random unitary superoperator; a generic non-preserver.
inline Superoperator random_superop(const Dims& dims, std::uint64_t seed) {
  return Superoperator(haar_unitary(dims.superop_side(), seed), dims);
}

/// True iff Phi(pi_A) is an MES for num_samples random coisometries A
/// (sample i drawn from derive_seed(seed, i)).
inline bool preserves_mes(const Superoperator& phi, int num_samples, double tol,
                          std::uint64_t seed) {
  for (int i = 0; i < num_samples; ++i) {
    const Matrix in = random_mes(phi.dims, derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (!is_mes(apply(phi, in), phi.dims, tol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// span(MES)

struct SpanBasis {
  std::vector<Matrix> elements;  // linearly independent MES
  Matrix frame;                  // orthonormal columns spanning vec(span(MES))
};

namespace detail {

inline constexpr double kSpanRankTol = 1e-9;
inline constexpr int kSpanStableBatches = 3;

/// Deterministic enumeration: canonical block coisometries first, then a
/// seeded Haar stream. For k >= 2 each draw also contributes the four
/// polarization states of an orthogonal pair.
inline void append_span_candidates(const Dims& dims, int batch, int batch_size,
                                   std::vector<Matrix>& out) {
  const double root_half = 1.0 / std::sqrt(2.0);
  const Complex powers[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  auto add_family = [&](const std::vector<Coisometry>& family) {
    out.push_back(pi(family[0]));
    if (family.size() < 2) return;
    for (const Complex& p : powers) {
      out.push_back(pi(Matrix(root_half * (family[0].matrix() + p * family[1].matrix()))));
    }
  };
  if (batch == 0) {
    const auto canonical = row_blocks(Matrix::Identity(dims.n(), dims.n()), dims);
    add_family(canonical);
    for (std::size_t j = 1; j < canonical.size(); ++j) out.push_back(pi(canonical[j]));
  }
  const std::uint64_t stream = derive_seed(0x5ba11e5ULL, static_cast<std::uint64_t>(dims.m()) *
                                                             1000003ULL + dims.k());
  for (int i = 0; i < batch_size; ++i) {
    const auto draw = static_cast<std::uint64_t>(batch) * batch_size + i;
    add_family(orthogonal_family(dims, derive_seed(stream, draw)));
  }
}

inline SpanBasis compute_span_basis(const Dims& dims) {
  const int side = dims.superop_side();
  const int batch_size = std::max(4, side / 16);
  std::vector<Matrix> candidates;
  int rank = -1;
  int stable = 0;
  Eigen::ColPivHouseholderQR<Matrix> qr;
  for (int batch = 0; stable < kSpanStableBatches && rank < side; ++batch) {
    append_span_candidates(dims, batch, batch_size, candidates);
    Matrix samples(side, static_cast<Eigen::Index>(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) samples.col(c) = vec(candidates[c]);
    qr.setThreshold(kSpanRankTol);
    qr.compute(samples);
    const int r = static_cast<int>(qr.rank());
    stable = (r == rank) ? stable + 1 : 0;
    rank = r;
  }
  SpanBasis basis;
  Matrix chosen(side, rank);
  for (int c = 0; c < rank; ++c) {
    const auto idx = static_cast<std::size_t>(qr.colsPermutation().indices()(c));
    basis.elements.push_back(candidates[idx]);
    chosen.col(c) = vec(candidates[idx]);
  }
  Eigen::HouseholderQR<Matrix> thin(chosen);
  basis.frame = thin.householderQ() * Matrix::Identity(side, rank);
  return basis;
}

}  // namespace detail

/// Maximal linearly independent set of MES (plus an orthonormal frame of
/// their span). Deterministic per dims; computed once and cached.
inline const SpanBasis& span_mes(const Dims& dims) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, SpanBasis> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(dims.m(), dims.k());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::compute_span_basis(dims)).first;
  return it->second;
}

inline std::vector<Matrix> span_mes_basis(const Dims& dims) { return span_mes(dims).elements; }

/// Singular values (descending) of Phi projected onto span(MES) coordinates.
inline RealVector span_singular_values(const Superoperator& phi) {
  const Matrix& q = span_mes(phi.dims).frame;
  const Matrix restricted = q.adjoint() * (phi.matrix * q);
  Eigen::BDCSVD<Matrix> svd(restricted);
  return svd.singularValues();
}

inline bool is_invertible_on_span(const Superoperator& phi, double tol = kDefaultTol) {
  const RealVector s = span_singular_values(phi);
  if (s.size() == 0) return false;
  return s(s.size() - 1) > tol * std::max(1.0, s(0));
}

}  // namespace meskit
