// Copyright 2026 The unitint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "unitint/grid.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/linalg.hpp"

// Brute-force reference propagator for i dU/dt = H(t) U, U(t_start) = I.
// Each step applies the exact exponential of the midpoint Hamiltonian, so every
// sample is unitary up to expm rounding and constant H is propagated exactly.

namespace unitint::oracle {

struct PropagationResult {
  std::vector<double> times;
  std::vector<ComplexMatrix> U;
  /// ||U_end(steps) - U_end(2 steps)||_F, or 0 when not requested.
  double est_error = 0.0;
};

/// Midpoint-exponential samples on `grid`. Throws ModelError on a non-Hermitian sample when
/// check_hermitian is set.
std::vector<ComplexMatrix> propagate_samples(const MatrixEvaluator& h, const TimeGrid& grid,
                                             bool check_hermitian = true);

/// Full oracle run on [0, t_end] plus a 2x-steps run for the error estimate.
PropagationResult propagate(const MatrixEvaluator& h, double t_end, std::size_t steps,
                            bool estimate_error = true);

inline PropagationResult propagate(const BlockedHamiltonian& h, double t_end, std::size_t steps,
                                   bool estimate_error = true) {
  return propagate(h.evaluator(), t_end, steps, estimate_error);
}

struct Distance {
  double plain = 0.0;
  /// min over phi of ||a - e^{i phi} b||_F.
  double phase_insensitive = 0.0;
};

Distance compare(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace unitint::oracle
