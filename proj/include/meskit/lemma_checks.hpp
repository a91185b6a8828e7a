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
 * @file lemma_checks.hpp
 * Numerical verification suite for the structural identities the library
 * relies on. Each check reports its worst residual over randomized cases; a
 * check passes iff that residual (or disagreement count) is below tol.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meskit/classify.hpp"
#include "meskit/extension.hpp"

namespace meskit {

struct LemmaCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  double max_residual = 0.0;
  int cases = 0;
  int disagreements = 0;
  std::string note;
};

struct LemmaCheckConfig {
  int m = 2;
  int k = 2;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  int cases = 20;
};

namespace checks {

inline LemmaCheck make_result(std::string name, double residual, int cases, double tol) {
  LemmaCheck c;
  c.name = std::move(name);
  c.max_residual = residual;
  c.cases = cases;
  c.passed = residual < tol;
  return c;
}

inline LemmaCheck skipped(std::string name, std::string why) {
  LemmaCheck c;
  c.name = std::move(name);
  c.skipped = true;
  c.passed = true;
  c.note = std::move(why);
  return c;
}

/// tr_Y(vec(A) vec(B)^*) = A B^*.
inline LemmaCheck partial_trace_outer(const Dims& d, const LemmaCheckConfig& cfg) {
  double worst = 0.0;
  Rng rng(derive_seed(cfg.seed, 101));
  for (int i = 0; i < cfg.cases; ++i) {
    const Matrix a = complex_gaussian(d.m(), d.n(), rng);
    const Matrix b = complex_gaussian(d.m(), d.n(), rng);
    const Matrix lhs = partial_trace_y(outer(vec(a), vec(b)), d);
    worst = std::max(worst, (lhs - a * b.adjoint()).norm());
  }
  return make_result("partial_trace_outer_product", worst, cfg.cases, cfg.tol);
}

/// tr_Y(M) = 1_m / m on MES.
inline LemmaCheck mes_partial_trace(const Dims& d, const LemmaCheckConfig& cfg) {
  double worst = 0.0;
  const Matrix target = Matrix::Identity(d.m(), d.m()) / static_cast<double>(d.m());
  for (int i = 0; i < cfg.cases; ++i) {
    const Matrix mes = random_mes(d, derive_seed(cfg.seed, 200 + i));
    worst = std::max(worst, (partial_trace_y(mes, d) - target).norm());
  }
  return make_result("mes_partial_trace", worst, cfg.cases, cfg.tol);
}

/// A rank-1 trace-1 PSD M = u u^* has tr_Y(M) = 1_m / m iff sqrt(m) unvec(u)
/// is a coisometry. Half of the cases are MES, half generic pure states.
inline LemmaCheck rank_one_span_membership(const Dims& d, const LemmaCheckConfig& cfg) {
  LemmaCheck c;
  c.name = "rank_one_span_membership";
  c.cases = cfg.cases;
  Rng rng(derive_seed(cfg.seed, 301));
  const Matrix target = Matrix::Identity(d.m(), d.m()) / static_cast<double>(d.m());
  for (int i = 0; i < cfg.cases; ++i) {
    const bool mes_case = i % 2 == 0;
    const Vector u = mes_case ? Vector(vec(random_coisometry(d.m(), d.n(), rng).matrix()) /
                                       std::sqrt(static_cast<double>(d.m())))
                              : random_unit_vector(d.mn(), rng);
    const Matrix state = outer(u, u);
    const double trace_dev = (partial_trace_y(state, d) - target).norm();
    const Matrix a = std::sqrt(static_cast<double>(d.m())) * unvec(u, d.m(), d.n());
    const double cois_dev = (a * a.adjoint() - Matrix::Identity(d.m(), d.m())).norm();
    const bool in_span = trace_dev < cfg.tol;
    const bool coisometric = cois_dev < cfg.tol;
    if (in_span != coisometric || (mes_case && !in_span) || (d.m() > 1 && !mes_case && in_span)) {
      ++c.disagreements;
    }
    if (mes_case) c.max_residual = std::max({c.max_residual, trace_dev, cois_dev});
  }
  c.passed = c.disagreements == 0;
  return c;
}

/// The five characterizations of orthogonality agree, on orthogonal pairs and
/// on independent (non-orthogonal) controls.
struct OrthogonalityConditions {
  std::array<bool, 5> holds{};
  bool agree() const {
    for (bool h : holds) {
      if (h != holds[0]) return false;
    }
    return true;
  }
};

inline OrthogonalityConditions orthogonality_conditions(const Matrix& a1, const Matrix& a2,
                                                        double tol, Rng& rng) {
  OrthogonalityConditions c;
  const int m = static_cast<int>(a1.rows());
  c.holds[0] = (a1 * a2.adjoint()).norm() < tol;
  c.holds[1] = (a2 * a1.adjoint()).norm() < tol;
  Matrix stacked(2 * m, a1.cols());
  stacked << a1, a2;
  c.holds[2] = is_coisometry(stacked, tol);
  bool all_coisometric = true;
  for (int s = 0; s < 20; ++s) {
    const Vector ab = random_unit_vector(2, rng);
    if (!is_coisometry(ab(0) * a1 + ab(1) * a2, tol)) all_coisometric = false;
  }
  c.holds[3] = all_coisometric;
  // Row spaces via orthonormal bases of range(A^*), independent of A1 A2^*.
  const Matrix q1 = Eigen::HouseholderQR<Matrix>(a1.adjoint()).householderQ() *
                    Matrix::Identity(a1.cols(), m);
  const Matrix q2 = Eigen::HouseholderQR<Matrix>(a2.adjoint()).householderQ() *
                    Matrix::Identity(a2.cols(), m);
  c.holds[4] = (q1.adjoint() * q2).norm() < tol;
  return c;
}

inline LemmaCheck orthogonality_equivalence(const Dims& d, const LemmaCheckConfig& cfg) {
  LemmaCheck c;
  c.name = "orthogonality_equivalence";
  Rng rng(derive_seed(cfg.seed, 401));
  for (int i = 0; i < cfg.cases; ++i) {
    if (d.k() >= 2) {
      const auto fam = orthogonal_family(d, derive_seed(cfg.seed, 4000 + i));
      const auto pos = orthogonality_conditions(fam[0].matrix(), fam[1].matrix(), cfg.tol, rng);
      if (!pos.agree() || !pos.holds[0]) ++c.disagreements;
      c.max_residual =
          std::max(c.max_residual, (fam[0].matrix() * fam[1].matrix().adjoint()).norm());
      ++c.cases;
    }
    const Coisometry x = random_coisometry(d.m(), d.n(), rng);
    const Coisometry y = random_coisometry(d.m(), d.n(), rng);
    const auto neg = orthogonality_conditions(x.matrix(), y.matrix(), cfg.tol, rng);
    if (!neg.agree() || neg.holds[0]) ++c.disagreements;
    ++c.cases;
  }
  c.passed = c.disagreements == 0;
  return c;
}

/// Two-term coherence of zeta on an orthogonal pair: det J(G) selects sigma
/// and Phi(pi_{a A1 + b A2}) = pi_{a B1 + b B2} (conjugated coefficients
/// under transpose).
inline LemmaCheck two_term_coherence(const Dims& d, const LemmaCheckConfig& cfg) {
  if (d.k() < 2) return skipped("two_term_coherence", "requires k >= 2");
  LemmaCheck c;
  c.name = "two_term_coherence";
  Rng rng(derive_seed(cfg.seed, 501));
  for (int i = 0; i < cfg.cases; ++i) {
    const Sigma sigma = i % 2 == 0 ? Sigma::Identity : Sigma::Transpose;
    const auto pres = random_adjoint_preserver(d, sigma, derive_seed(cfg.seed, 5000 + i));
    const auto fam = orthogonal_family(d, derive_seed(cfg.seed, 5500 + i));
    const std::vector<Coisometry> pair = {fam[0], fam[1]};
    const Complex det = choi_determinant(pres.phi, pair[0], pair[1], cfg.tol);
    const double expected = sigma == Sigma::Identity ? 0.0 : -1.0;
    c.max_residual = std::max(c.max_residual, std::abs(det - expected));
    const auto images = align_images(pres.phi, pair, sigma, std::max(cfg.tol, 1e-9));
    const Vector ab = random_unit_vector(2, rng);
    const Complex a = sigma == Sigma::Identity ? ab(0) : std::conj(ab(0));
    const Complex b = sigma == Sigma::Identity ? ab(1) : std::conj(ab(1));
    const Matrix lhs = apply(pres.phi, pi(Matrix(ab(0) * pair[0].matrix() + ab(1) * pair[1].matrix())));
    const Matrix rhs = pi(Matrix(a * images[0].matrix() + b * images[1].matrix()));
    c.max_residual = std::max(c.max_residual, (lhs - rhs).norm());
    ++c.cases;
  }
  c.passed = c.max_residual < cfg.tol;
  return c;
}

/// Phi(vec(A1) vec(A2)^*) from four MES values equals the direct value.
inline LemmaCheck polarization(const Dims& d, const LemmaCheckConfig& cfg) {
  if (d.k() < 2) return skipped("polarization", "requires k >= 2");
  double worst = 0.0;
  for (int i = 0; i < cfg.cases; ++i) {
    const Sigma sigma = i % 2 == 0 ? Sigma::Identity : Sigma::Transpose;
    const auto pres = random_adjoint_preserver(d, sigma, derive_seed(cfg.seed, 6000 + i));
    const auto fam = orthogonal_family(d, derive_seed(cfg.seed, 6500 + i));
    const Matrix direct = apply(pres.phi, outer(vec(fam[0].matrix()), vec(fam[1].matrix())));
    worst = std::max(worst, (phi_on_cross_term(pres.phi, fam[0], fam[1]) - direct).norm());
  }
  return make_result("polarization", worst, cfg.cases, cfg.tol);
}

/// k-term coherence with the aligned images of a full orthogonal family.
inline LemmaCheck k_term_coherence(const Dims& d, const LemmaCheckConfig& cfg) {
  if (d.k() < 2) return skipped("k_term_coherence", "requires k >= 2");
  double worst = 0.0;
  Rng rng(derive_seed(cfg.seed, 701));
  int cases = 0;
  for (int i = 0; i < std::max(2, cfg.cases / 5); ++i) {
    const Sigma sigma = i % 2 == 0 ? Sigma::Identity : Sigma::Transpose;
    const auto pres = random_adjoint_preserver(d, sigma, derive_seed(cfg.seed, 7000 + i));
    const auto fam = orthogonal_family(d, derive_seed(cfg.seed, 7500 + i));
    const auto images = align_images(pres.phi, fam, sigma, std::max(cfg.tol, 1e-9));
    for (int s = 0; s < 5; ++s) {
      const Vector alpha = random_unit_vector(d.k(), rng);
      Matrix in = Matrix::Zero(d.m(), d.n());
      Matrix out = Matrix::Zero(d.m(), d.n());
      for (int j = 0; j < d.k(); ++j) {
        in += alpha(j) * fam[j].matrix();
        out += (sigma == Sigma::Identity ? alpha(j) : std::conj(alpha(j))) * images[j].matrix();
      }
      worst = std::max(worst, (apply(pres.phi, pi(in)) - pi(out)).norm());
      ++cases;
    }
  }
  return make_result("k_term_coherence", worst, cases, cfg.tol);
}

/// Worst distance of the extension's outputs from MES_{Y,Y}.
inline double mes_deviation(const Matrix& op, const Dims& d) {
  if (!is_hermitian(op, 1e-6)) return (op - op.adjoint()).norm();
  const RankOneFactor f = rank_one_factor(op, 1e-6);
  const Matrix target = Matrix::Identity(d.m(), d.m()) / static_cast<double>(d.m());
  return std::max(f.residual, (partial_trace_y(op, d) - target).norm());
}

inline LemmaCheck extension_preserves_mes(const Dims& d, const LemmaCheckConfig& cfg) {
  if (d.k() < 2) return skipped("extension_preserves_mes", "requires k >= 2");
  double worst = 0.0;
  const Dims ext_dims(d.n(), 1);
  for (int s = 0; s < 2; ++s) {
    const Sigma sigma = s == 0 ? Sigma::Identity : Sigma::Transpose;
    const auto pres = random_adjoint_preserver(d, sigma, derive_seed(cfg.seed, 8000 + s));
    const ExtendedSuperoperator ext = extend(pres.phi, sigma);
    for (int i = 0; i < cfg.cases / 2; ++i) {
      const Matrix in = random_mes(ext_dims, derive_seed(cfg.seed, 8100 + 50 * s + i));
      worst = std::max(worst, mes_deviation(apply(ext.op, in), ext_dims));
    }
  }
  return make_result("extension_preserves_mes", worst, cfg.cases, cfg.tol);
}

inline LemmaCheck extension_commutation(const Dims& d, const LemmaCheckConfig& cfg) {
  if (d.k() < 2) return skipped("extension_commutation", "requires k >= 2");
  double worst = 0.0;
  int cases = 0;
  const Matrix id_y = Matrix::Identity(d.n(), d.n());
  for (int s = 0; s < 2; ++s) {
    const Sigma sigma = s == 0 ? Sigma::Identity : Sigma::Transpose;
    const auto pres = random_adjoint_preserver(d, sigma, derive_seed(cfg.seed, 9000 + s));
    const ExtendedSuperoperator ext = extend(pres.phi, sigma);
    const int samples = std::max(2, cfg.cases / 4);
    for (int j = 1; j <= d.k(); ++j) {
      worst = std::max(worst, commutation_residual(ext.op, kron(p_operator(j, d), id_y), samples,
                                                   derive_seed(cfg.seed, 9100 + j)));
      cases += samples;
    }
    for (int p = 1; p <= d.k(); ++p) {
      for (int q = p + 1; q <= d.k(); ++q) {
        worst = std::max(worst, commutation_residual(ext.op, q_operator(p, q, d), samples,
                                                     derive_seed(cfg.seed, 9200 + p * 10 + q)));
        cases += samples;
      }
    }
  }
  return make_result("extension_commutation", worst, cases, cfg.tol);
}

/// S(pi_A) = pi_{A^T}, (pi_A)^T = pi_{conj A}, ad_{U (x) V}(pi_A) = pi_{U A V^T} on
/// L(Y (x) Y) for unitary A.
inline LemmaCheck switch_transpose_identities(const Dims& d, const LemmaCheckConfig& cfg) {
  const int n = d.n();
  const Superoperator s = switch_superop(n);
  double worst = 0.0;
  Rng rng(derive_seed(cfg.seed, 1001));
  for (int i = 0; i < cfg.cases; ++i) {
    const Matrix a = haar_unitary(n, rng);
    const Matrix u = haar_unitary(n, rng);
    const Matrix v = haar_unitary(n, rng);
    const Matrix pa = pi(a);
    worst = std::max(worst, (apply(s, pa) - pi(Matrix(a.transpose()))).norm());
    worst = std::max(worst, (Matrix(pa.transpose()) - pi(Matrix(a.conjugate()))).norm());
    const Matrix w = kron(u, v);
    worst = std::max(worst, (w * pa * w.adjoint() - pi(Matrix(u * a * v.transpose()))).norm());
  }
  return make_result("switch_transpose_identities", worst, cfg.cases, cfg.tol);
}

}  // namespace checks

inline std::vector<LemmaCheck> run_lemma_checks(const LemmaCheckConfig& cfg) {
  const Dims d(cfg.m, cfg.k);
  using CheckFn = std::function<LemmaCheck(const Dims&, const LemmaCheckConfig&)>;
  const std::vector<CheckFn> all = {
      checks::partial_trace_outer,      checks::mes_partial_trace,
      checks::rank_one_span_membership, checks::orthogonality_equivalence,
      checks::two_term_coherence,       checks::polarization,
      checks::k_term_coherence,         checks::extension_preserves_mes,
      checks::extension_commutation,    checks::switch_transpose_identities,
  };
  std::vector<LemmaCheck> out;
  out.reserve(all.size());
  for (const auto& check : all) {
    try {
      out.push_back(check(d, cfg));
    } catch (const Error& e) {
      LemmaCheck failed;
      failed.name = "error";
      failed.note = e.kind() + ": " + e.what();
      out.push_back(failed);
    }
  }
  return out;
}

}  // namespace meskit
