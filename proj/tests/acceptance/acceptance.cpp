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

// Acceptance suite: one PASS/FAIL line per criterion. Thresholds, sample
// counts and time budgets are fixed here; exit status is 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "meskit/meskit.hpp"

namespace {

using namespace meskit;
using Clock = std::chrono::steady_clock;

struct Verdict {
  std::string name;
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0,
                double e = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, a, b, c, d, e);
  return buf;
}

Sigma alternate(std::uint64_t i) { return i % 2 == 0 ? Sigma::Identity : Sigma::Transpose; }

// det J(G) within 1e-8 of 0 / -1 and detect_sigma exact, 100 preservers per dims.
Verdict choi_discriminant() {
  constexpr double kTol = 1e-8;
  constexpr double kBudget = 60.0;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int correct = 0;
  int total = 0;
  for (auto [m, k] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const Dims d(m, k);
    for (std::uint64_t i = 0; i < 100; ++i) {
      const Sigma sigma = alternate(i);
      const auto p = random_adjoint_preserver(d, sigma, derive_seed(1000 + m * 10 + k, i));
      const SigmaDetection det = detect_sigma_detailed(p.phi, derive_seed(1100, i));
      const double target = sigma == Sigma::Identity ? 0.0 : -1.0;
      worst = std::max(worst, std::abs(det.determinant - target));
      correct += det.sigma == sigma ? 1 : 0;
      ++total;
    }
  }
  const double elapsed = seconds_since(t0);
  return {"choi_discriminant", worst < kTol && correct == total && elapsed < kBudget,
          fmt("max |det J(G) - target| = %.3g (tol %.0e), %g/%g sigma correct", worst, kTol,
              correct, total) +
              fmt(", %.1f s (budget %.0f s)", elapsed, kBudget)};
}

// decompose recovers sigma exactly and U (x) V up to phase, error < 1e-7.
Verdict decomposition_round_trip() {
  constexpr double kTol = 1e-7;
  constexpr double kBudget = 300.0;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int sigma_correct = 0;
  int total = 0;
  int errors = 0;
  for (auto [m, k] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const Dims d(m, k);
    for (Sigma sigma : {Sigma::Identity, Sigma::Transpose}) {
      for (std::uint64_t s = 0; s < 50; ++s) {
        ++total;
        const auto p = random_adjoint_preserver(d, sigma, derive_seed(2000 + m * 10 + k, s));
        ClassifyConfig config;
        config.seed = s;
        try {
          const Decomposition dec = decompose(p.phi, config);
          sigma_correct += dec.sigma == sigma ? 1 : 0;
          worst = std::max(worst, phase_distance(kron(dec.u, dec.v), kron(p.u, p.v)));
        } catch (const Error&) {
          ++errors;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = errors == 0 && sigma_correct == total && worst < kTol && elapsed < kBudget;
  return {"decomposition_round_trip", ok,
          fmt("max phase-aligned ||U(x)V - U0(x)V0||_F = %.3g (tol %.0e), %g/%g sigma correct, "
              "%g errors",
              worst, kTol, sigma_correct, total, errors) +
              fmt(", %.1f s (budget %.0f s)", elapsed, kBudget)};
}

// tr_Y(vec(A) vec(B)^*) = A B^*, 1000 random pairs with m <= 3, n <= 9.
Verdict partial_trace_of_outer_products() {
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  Rng rng(3000);
  int cases = 0;
  while (cases < 1000) {
    for (int m = 1; m <= 3 && cases < 1000; ++m) {
      for (int n = 1; n <= 9 && cases < 1000; ++n) {
        const Matrix a = complex_gaussian(m, n, rng);
        const Matrix b = complex_gaussian(m, n, rng);
        const Matrix lhs = partial_trace_y(outer(vec(a), vec(b)), m, n);
        worst = std::max(worst, (lhs - a * b.adjoint()).norm());
        ++cases;
      }
    }
  }
  return {"partial_trace_of_outer_products", worst < kTol,
          fmt("max residual %.3g over %g pairs (tol %.0e)", worst, cases, kTol)};
}

// The five orthogonality conditions agree on 500 orthogonal pairs and 500
// non-orthogonal controls.
Verdict orthogonality_equivalence() {
  constexpr double kTol = 1e-9;
  const std::vector<Dims> dims = {Dims(1, 2), Dims(2, 2), Dims(2, 3), Dims(3, 2)};
  Rng rng(4000);
  int disagreements = 0;
  int positives = 0;
  int negatives = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Dims& d = dims[i % dims.size()];
    const auto fam = orthogonal_family(d, derive_seed(4100, i));
    const auto pos = checks::orthogonality_conditions(fam[0].matrix(), fam[1].matrix(), kTol, rng);
    disagreements += (pos.agree() && pos.holds[0]) ? 0 : 1;
    ++positives;
    const Coisometry x = random_coisometry(d.m(), d.n(), rng);
    const Coisometry y = random_coisometry(d.m(), d.n(), rng);
    const auto neg = checks::orthogonality_conditions(x.matrix(), y.matrix(), kTol, rng);
    disagreements += (neg.agree() && !neg.holds[0]) ? 0 : 1;
    ++negatives;
  }
  return {"orthogonality_equivalence", disagreements == 0,
          fmt("%g disagreements over %g orthogonal pairs and %g controls (tol %.0e)",
              disagreements, positives, negatives, kTol)};
}

// Phi(vec(A1) vec(A2)^*) from four MES values of Phi, 200 cases.
Verdict polarization_reconstruction() {
  constexpr double kTol = 1e-10;
  const std::vector<Dims> dims = {Dims(1, 2), Dims(2, 2), Dims(2, 3), Dims(3, 2)};
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims& d = dims[i % dims.size()];
    const auto p = random_adjoint_preserver(d, alternate(i / dims.size()), derive_seed(5000, i));
    const auto fam = orthogonal_family(d, derive_seed(5100, i));
    const Matrix direct = apply(p.phi, outer(vec(fam[0].matrix()), vec(fam[1].matrix())));
    worst = std::max(worst, (phi_on_cross_term(p.phi, fam[0], fam[1]) - direct).norm());
  }
  return {"polarization_reconstruction", worst < kTol,
          fmt("max residual %.3g over 200 cases (tol %.0e)", worst, kTol)};
}

// The extension maps MES_{Y,Y} into itself and commutes with every
// ad_{P_j (x) 1} and ad_{Q_pq}.
Verdict extension_structure() {
  constexpr double kMesTol = 1e-8;
  constexpr double kCommTol = 1e-9;
  int mes_failures = 0;
  int mes_cases = 0;
  double worst_comm = 0.0;
  for (auto [m, k] : {std::pair{2, 2}, std::pair{2, 3}}) {
    const Dims d(m, k);
    const Dims big(d.n(), 1);
    const Matrix id_y = Matrix::Identity(d.n(), d.n());
    for (Sigma sigma : {Sigma::Identity, Sigma::Transpose}) {
      const auto p = random_adjoint_preserver(d, sigma, derive_seed(6000 + m * 10 + k, 0));
      const ExtendedSuperoperator ext = extend(p.phi, sigma);
      for (std::uint64_t i = 0; i < 100; ++i) {
        const Matrix out = apply(ext.op, random_mes(big, derive_seed(6100, i)));
        mes_failures += is_mes(out, big, kMesTol) ? 0 : 1;
        ++mes_cases;
      }
      for (int j = 1; j <= k; ++j) {
        worst_comm = std::max(worst_comm, commutation_residual(ext.op, kron(p_operator(j, d), id_y),
                                                               10, derive_seed(6200, j)));
      }
      for (int a = 1; a <= k; ++a) {
        for (int b = a + 1; b <= k; ++b) {
          worst_comm = std::max(worst_comm, commutation_residual(ext.op, q_operator(a, b, d), 10,
                                                                 derive_seed(6300, a * 10 + b)));
        }
      }
    }
  }
  return {"extension_structure", mes_failures == 0 && worst_comm < kCommTol,
          fmt("%g/%g images not MES at %.0e; max commutation residual %.3g (tol %.0e)",
              mes_failures, mes_cases, kMesTol, worst_comm, kCommTol)};
}

// Trace preservers are rejected as non-invertible, Haar superoperators as
// non-preservers, and the swap form fails P_1 commutation on the witness.
Verdict negative_controls() {
  constexpr int kSeeds = 50;
  constexpr double kCommTol = 1e-9;
  const Dims d(2, 2);
  int trace_false_accepts = 0;
  int haar_false_accepts = 0;
  int swap_false_accepts = 0;
  double min_witness = 1e300;
  const Matrix p1 = kron(p_operator(1, d), Matrix(Matrix::Identity(d.n(), d.n())));
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    ClassifyConfig config;
    config.seed = s;
    try {
      decompose(make_trace_preserver(random_mes(d, derive_seed(7000, s)), d), config);
      ++trace_false_accepts;
    } catch (const NotInvertibleError&) {
    } catch (const Error&) {
      ++trace_false_accepts;
    }
    try {
      decompose(random_superop(d, derive_seed(7100, s)), config);
      ++haar_false_accepts;
    } catch (const NotPreserverError&) {
    } catch (const Error&) {
      ++haar_false_accepts;
    }
    const Sigma sigma = alternate(s);
    const Matrix u = haar_unitary(d.n(), derive_seed(7200, s));
    const Matrix v = haar_unitary(d.n(), derive_seed(7300, s));
    const Superoperator swap = make_swap_preserver(u, v, sigma);
    const Matrix witness = switch_commutation_witness(u, sigma, d);
    const double r = commutation_residual_at(swap, p1, pi(witness));
    min_witness = std::min(min_witness, r);
    swap_false_accepts += r < kCommTol ? 1 : 0;
  }
  const bool ok = trace_false_accepts == 0 && haar_false_accepts == 0 && swap_false_accepts == 0;
  return {"negative_controls", ok,
          fmt("false accepts: trace %g/%g, haar %g/%g, ", trace_false_accepts, kSeeds,
              haar_false_accepts, kSeeds) +
              fmt("swap %g/%g (min witness residual %.3g, threshold %.0e)", swap_false_accepts,
                  kSeeds, min_witness, kCommTol)};
}

// pi of a combination of the family maps to pi of the same combination of
// aligned images (conjugated coefficients for the transpose branch), k = 3.
Verdict combination_semantics() {
  constexpr double kTol = 1e-8;
  const Dims d(2, 3);
  double worst[2] = {0.0, 0.0};
  Rng rng(8000);
  for (int branch = 0; branch < 2; ++branch) {
    const Sigma sigma = branch == 0 ? Sigma::Identity : Sigma::Transpose;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const auto p = random_adjoint_preserver(d, sigma, derive_seed(8100 + branch, i / 10));
      const auto fam = orthogonal_family(d, derive_seed(8200 + branch, i / 10));
      const auto images = align_images(p.phi, fam, sigma);
      const Vector alpha = random_unit_vector(3, rng);
      Matrix in = Matrix::Zero(d.m(), d.n());
      Matrix out = Matrix::Zero(d.m(), d.n());
      for (int j = 0; j < 3; ++j) {
        in += alpha(j) * fam[j].matrix();
        out += (branch == 0 ? alpha(j) : std::conj(alpha(j))) * images[j].matrix();
      }
      worst[branch] = std::max(worst[branch], (apply(p.phi, pi(in)) - pi(out)).norm());
    }
  }
  return {"combination_semantics", worst[0] < kTol && worst[1] < kTol,
          fmt("max residual identity %.3g, transpose %.3g over 100 vectors each (tol %.0e)",
              worst[0], worst[1], kTol)};
}

}  // namespace

int main() {
  using Criterion = Verdict (*)();
  const Criterion criteria[] = {
      choi_discriminant,         decomposition_round_trip, partial_trace_of_outer_products,
      orthogonality_equivalence, polarization_reconstruction, extension_structure,
      negative_controls,         combination_semantics,
  };
  int failures = 0;
  int index = 0;
  for (Criterion run : criteria) {
    ++index;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {"criterion_" + std::to_string(index), false, std::string("unexpected error: ") + e.what()};
    }
    failures += v.passed ? 0 : 1;
    std::printf("[%s] AC%d %s: %s\n", v.passed ? "PASS" : "FAIL", index, v.name.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d acceptance criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
