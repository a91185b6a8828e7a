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
 * @file classify.hpp
 * Decomposition of an invertible MES preserver on L(X (x) Y), Y = X^k with
 * k >= 2, into Phi(M) = (U (x) V) M^sigma (U (x) V)^*.
 *
 * Pipeline:
 *   1. sampled MES preservation        -> NotPreserverError
 *   2. invertibility on span(MES)      -> NotInvertibleError
 *   3. sigma from det J(G)             -> InconsistentChoiError
 *   4. Phi' = Phi o tau if transposed
 *   5. W with Phi'(M) W = W M on MES   (commutant is scalar, so W is unique
 *                                       up to scale)
 *   6. W ~ U (x) V                     -> NotKroneckerError
 *   7. certificate on fresh samples
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meskit/choi_sigma.hpp"

namespace meskit {

struct ClassifyConfig {
  double tol = kDefaultTol;
  int samples = 0;  // MES samples for recover_unitary; 0 means 2 (mn)^2
  int check_samples = 16;
  int verify_samples = 16;
  std::uint64_t seed = 0;

  int recovery_samples(const Dims& dims) const {
    return samples > 0 ? samples : 2 * dims.superop_side();
  }
};

struct Decomposition {
  Sigma sigma = Sigma::Identity;
  Matrix u;
  Matrix v;
  double kron_residual = 0.0;
  double verification_residual = 0.0;
};

struct NullSpaceReport {
  double sigma_first = 0.0;
  double sigma_last = 0.0;
  double sigma_second_last = 0.0;
};

namespace detail {

/// sqrt(sum_i ||B_i W - W M_i||_F^2) for W = unvec(w).
inline double sylvester_residual(const std::vector<Matrix>& images,
                                 const std::vector<Matrix>& inputs, const Vector& w, int side) {
  const Matrix wm = unvec(w, side, side);
  double acc = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    acc += (images[i] * wm - wm * inputs[i]).squaredNorm();
  }
  return std::sqrt(acc);
}

}  // namespace detail

/// Unitary W (phase-gauged) with Phi(M) = W M W^* on sampled MES.
///
/// The stacked system K_i vec(W) = vec(B_i W - W M_i), K_i = B_i (x) 1 - 1 (x) M_i^T,
/// is reduced to its Gram matrix N = sum_i K_i^* K_i, assembled as
///   (sum B^*B) (x) 1 + 1 (x) (sum conj(M) M^T) - T - T^*,   T = sum B (x) conj(M),
/// where T comes from one product of the stacked vec(B_i) and vec(conj(M_i)).
/// The smallest and second-smallest singular values are then measured
/// directly on the eigenvectors of N, so the null-vector test does not
/// inherit the squared conditioning of N.
inline Matrix recover_unitary(const Superoperator& phi, int num_samples, double tol,
                              std::uint64_t seed, NullSpaceReport* report = nullptr) {
  const Dims& dims = phi.dims;
  const int side = dims.mn();
  const int side2 = side * side;
  if (num_samples < 1) throw DimensionError("recover_unitary requires at least one sample");

  std::vector<Matrix> inputs;
  std::vector<Matrix> images;
  inputs.reserve(num_samples);
  images.reserve(num_samples);
  Matrix stacked_b(side2, num_samples);
  Matrix stacked_m(side2, num_samples);
  Matrix sum_bb = Matrix::Zero(side, side);
  Matrix sum_mm = Matrix::Zero(side, side);
  for (int i = 0; i < num_samples; ++i) {
    Matrix in = random_mes(dims, derive_seed(seed, static_cast<std::uint64_t>(i)));
    Matrix out = apply(phi, in);
    sum_bb += out.adjoint() * out;
    sum_mm += in.conjugate() * in.transpose();
    stacked_b.col(i) = vec(out);
    stacked_m.col(i) = vec(Matrix(in.conjugate()));
    inputs.push_back(std::move(in));
    images.push_back(std::move(out));
  }
  // rearranged(a s + c, b s + d) = sum_i B_i(a, c) conj(M_i)(b, d)
  const Matrix rearranged = stacked_b * stacked_m.transpose();
  Matrix gram = kron(sum_bb, Matrix::Identity(side, side)) +
                kron(Matrix::Identity(side, side), sum_mm);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      for (int c = 0; c < side; ++c) {
        for (int d = 0; d < side; ++d) {
          const Complex t = rearranged(a * side + c, b * side + d);
          gram(a * side + b, c * side + d) -= t;
          gram(c * side + d, a * side + b) -= std::conj(t);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const RealVector& lambda = eig.eigenvalues();

  NullSpaceReport r;
  r.sigma_first = std::sqrt(std::max(0.0, lambda(side2 - 1)));
  const Vector w = eig.eigenvectors().col(0);
  r.sigma_last = detail::sylvester_residual(images, inputs, w, side);
  r.sigma_second_last =
      side2 > 1 ? detail::sylvester_residual(images, inputs, eig.eigenvectors().col(1), side) : 0.0;
  if (report != nullptr) *report = r;

  if (!(r.sigma_last < tol * r.sigma_first)) {
    throw NoSolutionError("recover_unitary: no W with Phi(M) W = W M (numerical nullity 0)");
  }
  if (!(r.sigma_second_last > 10.0 * tol * r.sigma_first)) {
    throw AmbiguousSolutionError("recover_unitary: numerical nullity >= 2");
  }
  return phase_aligned(polar_unitary(unvec(w, side, side)));
}

/// max over fresh MES samples of ||Phi(M) - (U (x) V) M^sigma (U (x) V)^*||_F.
inline double verify_theorem_form(const Superoperator& phi, const Decomposition& dec,
                                  int num_samples, std::uint64_t seed) {
  const Matrix w = kron(dec.u, dec.v);
  double worst = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    const Matrix in = random_mes(phi.dims, derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Matrix twisted = dec.sigma == Sigma::Transpose ? Matrix(in.transpose()) : in;
    worst = std::max(worst, (apply(phi, in) - w * twisted * w.adjoint()).norm());
  }
  return worst;
}

inline Decomposition decompose(const Superoperator& phi, const ClassifyConfig& config = {}) {
  const Dims& dims = phi.dims;
  const double tol = config.tol;
  if (dims.k() < 2) {
    throw DimensionError("decompose requires Y = X^k with k >= 2 (k = 1 is out of scope)",
                         "scope");
  }
  if (!preserves_mes(phi, config.check_samples, tol, derive_seed(config.seed, 1))) {
    throw NotPreserverError("Phi maps a sampled MES outside MES", "preserves_mes");
  }
  if (!is_invertible_on_span(phi, tol)) {
    throw NotInvertibleError("Phi is singular on span(MES)", "invertibility");
  }

  Decomposition dec;
  try {
    dec.sigma = detect_sigma(phi, derive_seed(config.seed, 2), tol);
  } catch (const InconsistentChoiError& e) {
    throw InconsistentChoiError(e.what(), "detect_sigma");
  } catch (const NotMESError& e) {
    throw NotPreserverError(e.what(), "detect_sigma");
  } catch (const SubspaceViolationError& e) {
    throw NotPreserverError(e.what(), "detect_sigma");
  }

  const Superoperator corrected =
      dec.sigma == Sigma::Transpose ? compose(phi, transpose_superop(dims)) : phi;
  Matrix w;
  try {
    w = recover_unitary(corrected, config.recovery_samples(dims), tol, derive_seed(config.seed, 3));
  } catch (const Error& e) {
    throw NotKroneckerError(e.kind() + ": " + e.what(), "recover_unitary");
  }

  const KronFactors f = nearest_kron_factor(w, dims);
  dec.kron_residual = f.residual;
  if (!(f.residual < tol * w.norm())) {
    throw NotKroneckerError("recovered W is not a Kronecker product (residual " +
                                std::to_string(f.residual) + ")",
                            "nearest_kron_factor");
  }
  dec.u = polar_unitary(f.u);
  dec.v = polar_unitary(f.v);
  const Complex c = gauge_factor(dec.u);
  dec.u *= c;
  dec.v *= std::conj(c);

  dec.verification_residual =
      verify_theorem_form(phi, dec, config.verify_samples, derive_seed(config.seed, 4));
  if (!(dec.verification_residual < tol)) {
    throw NotPreserverError("Phi does not match the recovered (U, V, sigma) on fresh MES samples",
                            "verify");
  }
  return dec;
}

}  // namespace meskit
