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

#include <optional>
#include <vector>

#include "unitint/grid.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/linalg.hpp"
#include "unitint/riccati.hpp"

// Evolution operator as a product U = U1 U2 of a base factor fixed by the Riccati
// coordinate z and a block-diagonal fiber factor. With the (N-n, n) partition
//
//   U~1 = [[I, z], [0, I]] [[I, 0], [w^dagger, I]],   w = -gamma1^{-1} z,
//   U~1^dagger U~1 = blockdiag(gamma1^{-1}, gamma2),   gamma1 = I + z z^dagger,
//                                                       gamma2 = I + z^dagger z,
//   U1 = U~1 b,   b = blockdiag(gamma1^{1/2}, gamma2^{-1/2}),
//
// and U2 obeys i dU2/dt = H_eff U2 with a Hermitian block-diagonal H_eff.

namespace unitint {

struct UnitarityClosure {
  ComplexMatrix w;       // (N-n) x n
  ComplexMatrix gamma1;  // (N-n) x (N-n)
  ComplexMatrix gamma2;  // n x n
};

UnitarityClosure unitarity_closure(const ComplexMatrix& z);

/// Product of the two unit-triangular factors; determinant 1.
ComplexMatrix assemble_tilde_U1(const ComplexMatrix& z);
/// Exact inverse of assemble_tilde_U1(z), built from the triangular factors.
ComplexMatrix tilde_U1_inverse(const ComplexMatrix& z);

struct GaugeUnitarization {
  ComplexMatrix U1;
  ComplexMatrix gauge;  // b, block-diagonal Hermitian positive-definite
};

/// U1 = U~1 b with b the inverse square root of blockdiag(gamma1^{-1}, gamma2).
GaugeUnitarization gauge_unitarize(const ComplexMatrix& tilde_U1, const ComplexMatrix& gamma1,
                                   const ComplexMatrix& gamma2);

/// Shorthand for the unitary base factor U1(z).
ComplexMatrix base_factor(const ComplexMatrix& z);

/// Closed-form gamma1^{+-1/2} = I + z z^dagger/(sqrt(g)+1), I - z z^dagger/(sqrt(g)+g) for a
/// column z, g = 1 + z^dagger z. Throws UnsupportedConfiguration unless z has one column.
SquareRoots gamma1_roots_closed_form(const ComplexMatrix& z);

/// d/dt of gamma^{-1/2} given d(gamma)/dt, from the Sylvester relation
/// S' S + S S' = gamma' solved in the eigenbasis of gamma.
ComplexMatrix inverse_sqrt_derivative(const ComplexMatrix& gamma, const ComplexMatrix& gamma_dot);

struct BlockPair {
  ComplexMatrix upper;
  ComplexMatrix lower;
};

/// Blocks of U~1^{-1} H U~1 - i U~1^{-1} dU~1/dt: (top - z V^dagger, bottom + V^dagger z).
/// Neither block is Hermitian or traceless in general.
BlockPair effective_hamiltonian_tilde(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// Hermitian blocks of U1^dagger H U1 - i U1^dagger dU1/dt:
///   upper = (i/2)[d(gamma1^{-1/2})/dt, gamma1^{1/2}]
///           + 1/2 {gamma1^{-1/2} (top - z V^dagger) gamma1^{1/2} + h.c.}
///   lower = (i/2)[d(gamma2^{-1/2})/dt, gamma2^{1/2}]
///           + 1/2 {gamma2^{-1/2} (bottom + z^dagger V) gamma2^{1/2} + h.c.}
/// z_dot must be the Riccati derivative at z.
BlockPair effective_hamiltonian_hermitian(const HamiltonianBlocks& blocks, const ComplexMatrix& z,
                                          const ComplexMatrix& z_dot);

// ---------------------------------------------------------------------------
// n = 1: corner phase and the hierarchical reduction

/// H_NN + Re(V^dagger z); the corner element of U2 evolves as exp(-i * integral).
double corner_rate(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// Geometric part of the corner phase rate,
///   g^{-1} [ z^dagger (top - H_NN) z + (z^dagger V + V^dagger z)(1 - g/2) ],
/// so that the geometric phase is its time integral.
double geometric_phase_rate(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// (U1^dagger H U1)_NN, computed from the explicit unitary base factor.
double dynamical_energy(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// Reduced (N-1)-level Hamiltonian
///   top - (z V^dagger + V z^dagger)/(sqrt(g)+1) - z (z^dagger V + V^dagger z) z^dagger / (2 (sqrt(g)+1)^2)
/// whose trace is -corner_rate. Throws UnsupportedConfiguration unless n = 1.
ComplexMatrix recursion_hamiltonian(const HamiltonianBlocks& blocks, const ComplexMatrix& z);

/// Continuous (non-modular) phases on a grid, Simpson in time.
struct PhaseSeries {
  std::vector<double> mu_total;   // phase of U2_NN
  std::vector<double> geometric;  // integral of geometric_phase_rate
  std::vector<double> dynamical;  // -integral of dynamical_energy
};

/// Corner phase along a segment, starting from zero.
PhaseSeries corner_phase(const BlockedHamiltonian& h, const RiccatiSegment& segment);

/// Corner phase along a whole trajectory; segments are joined continuously.
/// Throws UnsupportedConfiguration unless n = 1.
PhaseSeries corner_phase(const BlockedHamiltonian& h, const RiccatiTrajectory& trajectory);

// ---------------------------------------------------------------------------
// Reconstruction

/// Every factor at one instant.
struct FactoredEvolution {
  ComplexMatrix z;
  ComplexMatrix w;
  ComplexMatrix gamma1;
  ComplexMatrix gamma2;
  ComplexMatrix tilde_U1;
  ComplexMatrix gauge;
  ComplexMatrix U1;
  ComplexMatrix U2;
  /// n = 1 only.
  std::optional<double> mu_total;
  std::optional<double> phase_geometric;
  std::optional<double> phase_dynamical;
  /// N = 2 only: complex mu of the product form, see su2_mu.
  std::optional<Complex> su2_mu;

  ComplexMatrix evolution() const { return U1 * U2; }
};

/// SU(2) product form U = [[1, z], [0, 1]] [[1, 0], [w*, 1]] diag(e^{-i mu/2}, e^{i mu/2}):
/// mu = -2i ln U_22 (Re mu on the principal branch), so exp(Im mu) = 1/|U_22|^2 = 1 + |z|^2.
/// Throws ContractViolation unless U is 2x2 with U_22 != 0.
Complex su2_mu(const ComplexMatrix& U);

FactoredEvolution factor_at(const ComplexMatrix& z, const ComplexMatrix& U2);

/// A solved evolution on a uniform grid. Sample k of the full operator is
/// U1(z_k) * fiber[k] * accumulated_before(segment_of(k)).
struct EvolutionPath {
  RiccatiTrajectory trajectory;
  std::vector<double> times;
  std::vector<ComplexMatrix> U;
  /// Segment-local U2 samples; at restart points the later segment's (identity).
  std::vector<ComplexMatrix> fiber;
  std::optional<PhaseSeries> phases;

  /// Factors at grid point k (segment-local; phases continuous across segments).
  FactoredEvolution factors(std::size_t k) const;
};

/// Per-segment fiber solutions; fiber_solutions[s][i] is U2 at point i of segment s.
using FiberSolutions = std::vector<std::vector<ComplexMatrix>>;

/// Assembles U from a trajectory and its fiber solutions.
/// Throws ContractViolation when the fiber grids do not match the segments.
EvolutionPath reconstruct_full(const RiccatiTrajectory& trajectory,
                               const FiberSolutions& fiber_solutions);

/// Fiber factor over one segment: the Hermitian effective blocks propagated with a
/// fourth-order Magnus stepper, z between grid points from the Hermite interpolant.
std::vector<ComplexMatrix> solve_fiber(const BlockedHamiltonian& h, const RiccatiSegment& segment);

/// U at the end of a segment (U = I at its start), via solve_fiber.
ComplexMatrix materialize_segment(const BlockedHamiltonian& h, const RiccatiSegment& segment);

/// Riccati base plus direct fiber propagation; any block size.
EvolutionPath factorized_solve(const BlockedHamiltonian& h, const TimeGrid& grid,
                               const RiccatiOptions& opts = {});

/// Same, with the base coordinate integrated in its four-real SO(5) form.
EvolutionPath factorized_solve_so5(const SO5Coefficients& f, const TimeGrid& grid,
                                   const RiccatiOptions& opts = {});

struct LevelPhases {
  std::size_t dimension = 0;  // N of the level that produced the phase
  PhaseSeries phases;
};

struct HierarchicalSolution {
  EvolutionPath top;  // factors of the outermost level
  /// Outermost level first; one entry per level N, N-1, ..., 2.
  std::vector<LevelPhases> levels;
};

/// Repeated n = 1 peeling down to a single level. Throws UnsupportedConfiguration unless the
/// Hamiltonian is partitioned with n = 1; StiffnessError carries the failing level.
HierarchicalSolution hierarchical_solve(const BlockedHamiltonian& h, const TimeGrid& grid,
                                        const RiccatiOptions& opts = {});

}  // namespace unitint
