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
 * @file choi_sigma.hpp
 * The projective map induced by an MES preserver and the identity/transpose
 * discriminant.
 *
 * A preserver Phi induces zeta on classes of coisometries through
 * pi_{zeta[A]} = Phi(pi_A). For an orthogonal pair (A1, A2) with images
 * (B1, B2), Phi maps span{vec(A_i) vec(A_j)^*} onto span{vec(B_p) vec(B_q)^*};
 * the coefficient map G : C^{2x2} -> C^{2x2} sends rank-1 PSD matrices to
 * rank-1 PSD matrices and its Choi matrix J(G) takes exactly one of two
 * shapes. det J(G) is 0 when Phi carries no transpose and -1 when it does.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "meskit/superop.hpp"

namespace meskit {

/// Radius of the acceptance balls around det J(G) in {0, -1}.
inline constexpr double kChoiBallRadius = 0.5;

/// Representative of zeta[A]: the canonical coisometry B with pi_B = Phi(pi_A).
inline Coisometry zeta_image(const Superoperator& phi, const Coisometry& a,
                             double tol = kDefaultTol) {
  const Matrix image = apply(phi, pi(a));
  if (!is_mes(image, phi.dims, tol)) {
    throw NotMESError("zeta_image: Phi(pi_A) is not an MES; Phi does not preserve MES");
  }
  return representative(image, phi.dims, tol);
}

/// Phi(vec(A1) vec(A2)^*) reconstructed from four MES values of Phi by
/// polarization: vec(A1) vec(A2)^* = 1/4 sum_l i^l 2m pi_{(A1 + i^l A2)/sqrt 2}.
inline Matrix phi_on_cross_term(const Superoperator& phi, const Coisometry& a1,
                                const Coisometry& a2, double tol = kDefaultTol) {
  if (!are_orthogonal(a1, a2, tol)) {
    throw NotOrthogonalError("phi_on_cross_term: coisometries are not orthogonal");
  }
  const double m = a1.m();
  const double root_half = 1.0 / std::sqrt(2.0);
  const std::array<Complex, 4> powers = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  Matrix acc = Matrix::Zero(phi.dims.mn(), phi.dims.mn());
  for (const Complex& p : powers) {
    const Matrix mixed = root_half * (a1.matrix() + p * a2.matrix());
    acc += p * apply(phi, pi(mixed));
  }
  return acc * (2.0 * m / 4.0);
}

/// Phi(vec(A_p) vec(A_q)^*) using only MES values of Phi.
inline Matrix phi_on_outer(const Superoperator& phi, const Coisometry& ap, const Coisometry& aq,
                           bool same, double tol = kDefaultTol) {
  if (same) return static_cast<double>(ap.m()) * apply(phi, pi(ap));
  return phi_on_cross_term(phi, ap, aq, tol);
}

struct OuterExpansion {
  Matrix coefficients;  // 2x2: entry (p, q) multiplies vec(B_p) vec(B_q)^*
  double residual = 0.0;
};

/// Least-squares expansion of x in {vec(B_p) vec(B_q)^*}, p, q in {1, 2},
/// through the 4x4 Gram system (the B_p need not be orthogonal).
inline OuterExpansion expand_in_outer_basis(const Matrix& x, const Matrix& b1, const Matrix& b2) {
  const Vector v1 = vec(b1);
  const Vector v2 = vec(b2);
  const std::array<const Vector*, 2> vs = {&v1, &v2};
  Matrix basis(x.size(), 4);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) basis.col(p * 2 + q) = vec(outer(*vs[p], *vs[q]));
  }
  const Vector target = vec(x);
  const Matrix gram = basis.adjoint() * basis;
  const Vector c = gram.colPivHouseholderQr().solve(basis.adjoint() * target);
  OuterExpansion out;
  out.coefficients = unvec(c, 2, 2);
  out.residual = (target - basis * c).norm();
  return out;
}

struct RestrictedMapG {
  Matrix matrix;                      // 4x4 on row-vectorized 2x2 matrices
  std::array<Matrix, 2> basis_a;      // orthogonal pair A1, A2
  std::array<Matrix, 2> basis_b;      // zeta representatives of A1, A2
  double expansion_residual = 0.0;    // worst relative expansion residual

  /// G(E_ij) as a 2x2 matrix.
  Matrix image(int i, int j) const { return unvec(matrix.col(i * 2 + j), 2, 2); }
};

inline RestrictedMapG restricted_g(const Superoperator& phi, const Coisometry& a1,
                                   const Coisometry& a2, double tol = kDefaultTol) {
  const Coisometry b1 = zeta_image(phi, a1, tol);
  const Coisometry b2 = zeta_image(phi, a2, tol);
  const std::array<const Coisometry*, 2> as = {&a1, &a2};

  RestrictedMapG g;
  g.matrix = Matrix::Zero(4, 4);
  g.basis_a = {a1.matrix(), a2.matrix()};
  g.basis_b = {b1.matrix(), b2.matrix()};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Matrix x = phi_on_outer(phi, *as[i], *as[j], i == j, tol);
      const OuterExpansion e = expand_in_outer_basis(x, b1.matrix(), b2.matrix());
      const double rel = e.residual / std::max(1.0, x.norm());
      g.expansion_residual = std::max(g.expansion_residual, rel);
      g.matrix.col(i * 2 + j) = vec(e.coefficients);
    }
  }
  if (!(g.expansion_residual < tol)) {
    throw SubspaceViolationError(
        "restricted_g: Phi does not map span{vec(A_i) vec(A_j)^*} into "
        "span{vec(B_p) vec(B_q)^*}");
  }
  return g;
}

/// J(G) = sum_ij E_ij (x) G(E_ij), i.e. the block matrix [G(E_ij)].
inline Matrix choi_matrix(const RestrictedMapG& g) {
  Matrix j(4, 4);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) j.block(2 * r, 2 * c, 2, 2) = g.image(r, c);
  }
  return j;
}

inline Complex choi_determinant(const Superoperator& phi, const Coisometry& a1,
                                const Coisometry& a2, double tol = kDefaultTol) {
  return choi_matrix(restricted_g(phi, a1, a2, tol)).determinant();
}

/// Classifies det J(G) into {Identity: 0, Transpose: -1}.
inline Sigma classify_choi_determinant(Complex det) {
  if (std::abs(det) < kChoiBallRadius) return Sigma::Identity;
  if (std::abs(det + 1.0) < kChoiBallRadius) return Sigma::Transpose;
  throw InconsistentChoiError("det J(G) = (" + std::to_string(det.real()) + ", " +
                              std::to_string(det.imag()) + ") is near neither 0 nor -1");
}

struct SigmaDetection {
  Sigma sigma = Sigma::Identity;
  Complex determinant = 0.0;
};

inline SigmaDetection detect_sigma_detailed(const Superoperator& phi, std::uint64_t seed,
                                            double tol = kDefaultTol) {
  if (phi.dims.k() < 2) throw DimensionError("detect_sigma requires k >= 2 (n >= 2m)");
  const auto family = orthogonal_family(phi.dims, seed);
  SigmaDetection out;
  out.determinant = choi_determinant(phi, family[0], family[1], tol);
  out.sigma = classify_choi_determinant(out.determinant);
  return out;
}

inline Sigma detect_sigma(const Superoperator& phi, std::uint64_t seed, double tol = kDefaultTol) {
  return detect_sigma_detailed(phi, seed, tol).sigma;
}

/// max_{p,q} || Phi(vec(A_p) vec(A_q)^*) - target_pq ||_F, where target_pq is
/// vec(B_p) vec(B_q)^* (Identity) or vec(B_q) vec(B_p)^* (Transpose).
inline double coherence_residual(const Superoperator& phi, const std::vector<Coisometry>& family,
                                 const std::vector<Coisometry>& images, Sigma sigma,
                                 double tol = kDefaultTol) {
  double worst = 0.0;
  for (std::size_t p = 0; p < family.size(); ++p) {
    for (std::size_t q = 0; q < family.size(); ++q) {
      const Matrix x = phi_on_outer(phi, family[p], family[q], p == q, tol);
      const Vector bp = vec(images[p].matrix());
      const Vector bq = vec(images[q].matrix());
      const Matrix target = sigma == Sigma::Identity ? outer(bp, bq) : outer(bq, bp);
      worst = std::max(worst, (x - target).norm());
    }
  }
  return worst;
}

/// Phase-coherent images B_j of a mutually orthogonal family: B_1 is the
/// zeta representative of A_1 and the phase of each later B_j is read off
/// the (1, j) cross term.
inline std::vector<Coisometry> align_images(const Superoperator& phi,
                                            const std::vector<Coisometry>& family, Sigma sigma,
                                            double tol = kDefaultTol) {
  if (family.empty()) return {};
  std::vector<Coisometry> images;
  images.reserve(family.size());
  images.push_back(zeta_image(phi, family[0], tol));
  for (std::size_t j = 1; j < family.size(); ++j) {
    const Coisometry raw = zeta_image(phi, family[j], tol);
    const Matrix cross = phi_on_cross_term(phi, family[0], family[j], tol);
    const OuterExpansion e = expand_in_outer_basis(cross, images[0].matrix(), raw.matrix());
    const Complex c = sigma == Sigma::Identity ? e.coefficients(0, 1) : e.coefficients(1, 0);
    if (std::abs(c) < 0.5) {
      throw PhaseAlignmentError("align_images: cross-term coefficient has modulus " +
                                std::to_string(std::abs(c)) + ", expected 1");
    }
    const Complex phase = sigma == Sigma::Identity ? std::conj(c) / std::abs(c) : c / std::abs(c);
    images.emplace_back(Matrix(phase * raw.matrix()), 10.0 * std::max(tol, kDefaultTol));
  }
  const double residual = coherence_residual(phi, family, images, sigma, tol);
  if (!(residual < tol * std::max(1.0, static_cast<double>(family[0].m())))) {
    throw PhaseAlignmentError("align_images: coherence residual " + std::to_string(residual) +
                              " exceeds tolerance");
  }
  return images;
}

/// As above with sigma read from det J(G) on the first two members.
inline std::vector<Coisometry> align_images(const Superoperator& phi,
                                            const std::vector<Coisometry>& family,
                                            double tol = kDefaultTol) {
  Sigma sigma = Sigma::Identity;
  if (family.size() >= 2) {
    sigma = classify_choi_determinant(choi_determinant(phi, family[0], family[1], tol));
  }
  return align_images(phi, family, sigma, tol);
}

}  // namespace meskit
