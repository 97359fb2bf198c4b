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

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "unitint/grid.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/linalg.hpp"

namespace unitint {

/// Right-hand side of the matrix Riccati equation for the base coordinate z:
///   dz/dt = -i [ top z + V - z (V^dagger z + bottom) ].
/// Throws ContractViolation unless z is (N-n) x n.
ComplexMatrix riccati_rhs(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// One stretch of the base trajectory between restarts. z starts at zero.
struct RiccatiSegment {
  TimeGrid grid;
  std::size_t first_index = 0;  // index of grid.t_start in the parent grid
  std::vector<ComplexMatrix> z;
  std::vector<ComplexMatrix> z_dot;       // one-sided from the right (the step that starts here)
  std::vector<ComplexMatrix> z_dot_left;  // from the left; differs only at Hamiltonian breakpoints

  std::size_t steps() const { return z.size() - 1; }
  double time(std::size_t k) const { return grid.at(k); }
  /// Cubic Hermite dense output from the stored z and dz/dt (fourth-order accurate).
  ComplexMatrix z_at(double t) const;
};

struct RestartRecord {
  double time = 0.0;
  std::size_t step_index = 0;
  /// U(time), the product of all materialized segments so far.
  ComplexMatrix accumulated;
};

struct RiccatiTrajectory {
  TimeGrid grid;
  std::vector<double> times;
  /// z on the full grid; at a restart point this is the fresh (zero) value.
  std::vector<ComplexMatrix> z_samples;
  std::vector<RiccatiSegment> segments;
  std::vector<RestartRecord> restarts;
  /// Sum of per-step step-doubling error estimates (Frobenius), 0 if disabled.
  double est_error = 0.0;

  /// Index of the segment that owns grid point k (the later one at restart points).
  std::size_t segment_of(std::size_t k) const;
  /// U accumulated before segment s (identity for s = 0).
  ComplexMatrix accumulated_before(std::size_t s, std::size_t dimension) const;
};

struct RiccatiOptions {
  /// Restart threshold on ||z||_F.
  double z_max = 10.0;
  /// A segment shorter than this many steps when a restart is requested is a stiffness error.
  std::size_t min_segment_steps = 4;
  bool estimate_error = true;
  /// Grid indices at which to restart regardless of ||z||.
  std::vector<std::size_t> forced_restarts;
};

/// Returns U over the segment at its final grid point, with U = I at its start.
using SegmentMaterializer = std::function<ComplexMatrix(const RiccatiSegment&)>;

/// Classical RK4 on a uniform grid starting from z = 0. When ||z|| would reach z_max the
/// current segment is handed to `materialize`, the product is recorded as a restart, and
/// integration resumes from z = 0. An empty materializer uses the general fiber solver.
/// Throws StiffnessError when restarts come faster than min_segment_steps.
RiccatiTrajectory integrate_riccati(const BlockedHamiltonian& h, const TimeGrid& grid,
                                    const RiccatiOptions& opts = {},
                                    SegmentMaterializer materialize = {});

inline RiccatiTrajectory integrate_riccati(const BlockedHamiltonian& h, double t_end,
                                           std::size_t steps, double z_max = 10.0) {
  RiccatiOptions opts;
  opts.z_max = z_max;
  return integrate_riccati(h, TimeGrid::from_zero(t_end, steps), opts);
}

// ---------------------------------------------------------------------------
// SO(5): four real coordinates with z = z4 I - i z_k sigma_k.

/// (z1, z2, z3, z4).
using SO5State = std::array<double, 4>;

ComplexMatrix so5_state_matrix(const SO5State& z);
/// Inverse of so5_state_matrix; assumes quaternionic structure.
SO5State so5_state_from_matrix(const ComplexMatrix& z);

/// dz_mu/dt = F_{5mu}(1 - z.z) + 2 F_{mu nu} z_nu + 2 (F_{5nu} z_nu) z_mu, nu over 1..4.
SO5State so5_rhs(const Real5x5& f, const SO5State& z);

struct SO5Trajectory {
  RiccatiTrajectory trajectory;  // matrix rendering, usable by everything downstream
  std::vector<SO5State> samples;  // real rendering on the full grid
};

/// Integrates the four-real form with the same RK4, restart and error-estimate rules.
SO5Trajectory integrate_so5_riccati(const SO5Coefficients& f, const TimeGrid& grid,
                                    const RiccatiOptions& opts = {},
                                    SegmentMaterializer materialize = {});

}  // namespace unitint
