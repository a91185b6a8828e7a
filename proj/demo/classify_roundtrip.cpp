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


// Builds a random preserver X -> (U (x) V) X^T (U (x) V)^* on L(C^2 (x) C^4),
// hands only its matrix to decompose, and compares the answer with the truth.

#include <cstdio>

#include "meskit/meskit.hpp"

int main() {
  using namespace meskit;
  const Dims dims(2, 2);
  const PreserverSample truth = random_adjoint_preserver(dims, Sigma::Transpose, 42);

  const SigmaDetection det = detect_sigma_detailed(truth.phi, 7);
  std::printf("det J(G)             = %+.3e %+.3ei -> %s\n", det.determinant.real(),
              det.determinant.imag(), to_string(det.sigma).c_str());

  const Decomposition dec = decompose(truth.phi);
  std::printf("sigma                = %s\n", to_string(dec.sigma).c_str());
  std::printf("|U(x)V - truth|, phase = %.3e\n",
              phase_distance(kron(dec.u, dec.v), kron(truth.u, truth.v)));
  std::printf("kron residual        = %.3e\n", dec.kron_residual);
  std::printf("verification residual = %.3e\n", dec.verification_residual);

  try {
    decompose(make_trace_preserver(random_mes(dims, 1), dims));
  } catch (const Error& e) {
    std::printf("trace form           -> %s (%s)\n", e.kind().c_str(), e.stage().c_str());
  }
  return 0;
}
