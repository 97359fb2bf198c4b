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

#include "unitint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "unitint/errors.hpp"

namespace unitint::oracle {

std::vector<ComplexMatrix> propagate_samples(const MatrixEvaluator& h, const TimeGrid& grid,
                                             bool check_hermitian) {
  grid.validate();
  const double dt = grid.step();
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t_mid = grid.at(k) + 0.5 * dt;
    const ComplexMatrix hm = h(t_mid);
    if (out.empty()) out.push_back(ComplexMatrix::identity(hm.rows()));
    if (check_hermitian && hm.hermiticity_residual() > 1e-10 * std::max(1.0, hm.frobenius_norm())) {
      std::ostringstream msg;
      msg << "oracle: Hamiltonian is not Hermitian at t=" << t_mid;
      throw ModelError(msg.str());
    }
    out.push_back(expm(Complex(0.0, -dt) * hm) * out.back());
  }
  return out;
}

PropagationResult propagate(const MatrixEvaluator& h, double t_end, std::size_t steps,
                            bool estimate_error) {
  const auto grid = TimeGrid::from_zero(t_end, steps);
  PropagationResult result{grid.times(), propagate_samples(h, grid), 0.0};
  if (estimate_error) {
    const auto fine = propagate_samples(h, TimeGrid::from_zero(t_end, 2 * steps));
    result.est_error = distance(result.U.back(), fine.back());
  }
  return result;
}

Distance compare(const ComplexMatrix& a, const ComplexMatrix& b) {
  Distance d;
  d.plain = distance(a, b);
  // ||a - e^{i phi} b||^2 = ||a||^2 + ||b||^2 - 2 Re(e^{i phi} tr(a^dagger b)), minimized
  // when e^{i phi} aligns with conj(tr(a^dagger b)).
  Complex overlap = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    overlap += std::conj(ea[i]) * eb[i];
    na += std::norm(ea[i]);
    nb += std::norm(eb[i]);
  }
  // The closed form loses digits when a ~ e^{i phi} b; evaluate at the explicit minimizer.
  if (std::abs(overlap) > 0.0)
    d.phase_insensitive = distance(a, (std::conj(overlap) / std::abs(overlap)) * b);
  else
    d.phase_insensitive = std::sqrt(na + nb);
  return d;
}

}  // namespace unitint::oracle
