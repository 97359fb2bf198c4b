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

#include "unitint/factorization.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

#include "unitint/errors.hpp"
#include "unitint/oracle.hpp"

namespace unitint {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_column(const ComplexMatrix& z, const char* op) {
  if (z.cols() != 1) {
    std::ostringstream msg;
    msg << op << ": defined for block size n = 1 only (z has " << z.cols() << " columns)";
    throw UnsupportedConfiguration(msg.str());
  }
}

void require_conformable(const HamiltonianBlocks& blocks, const ComplexMatrix& z, const char* op) {
  if (z.rows() != blocks.coupling.rows() || z.cols() != blocks.coupling.cols()) {
    std::ostringstream msg;
    msg << op << ": z is " << z.rows() << "x" << z.cols() << " but the coupling block is "
        << blocks.coupling.rows() << "x" << blocks.coupling.cols();
    throw ContractViolation(msg.str());
  }
}

/// 1 + z^dagger z for a column z.
double gamma_scalar(const ComplexMatrix& z) {
  const double norm = z.frobenius_norm();
  return 1.0 + norm * norm;
}

/// Re(z^dagger V) for columns; equals (z^dagger V + V^dagger z) / 2.
double real_overlap(const ComplexMatrix& z, const ComplexMatrix& v) {
  return (z.adjoint() * v)(0, 0).real();
}

/// Writes a segment-local series into a grid-sized one, continuing from the value already
/// stored at the segment's first point.
void join_series(PhaseSeries& dst, const PhaseSeries& src, std::size_t first_index) {
  const double mu0 = dst.mu_total[first_index];
  const double geo0 = dst.geometric[first_index];
  const double dyn0 = dst.dynamical[first_index];
  for (std::size_t i = 0; i < src.mu_total.size(); ++i) {
    dst.mu_total[first_index + i] = mu0 + src.mu_total[i];
    dst.geometric[first_index + i] = geo0 + src.geometric[i];
    dst.dynamical[first_index + i] = dyn0 + src.dynamical[i];
  }
}

PhaseSeries zero_series(std::size_t size) {
  return {std::vector<double>(size), std::vector<double>(size), std::vector<double>(size)};
}

/// Fourth-order Magnus step with two Gauss nodes:
/// Omega = -i dt/2 (H1 + H2) - sqrt(3) dt^2/12 [H2, H1].
std::vector<ComplexMatrix> propagate_magnus4(const MatrixEvaluator& h, const TimeGrid& grid) {
  grid.validate();
  const double dt = grid.step();
  const double offset = std::sqrt(3.0) / 6.0;
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  out.push_back(ComplexMatrix::identity(h(grid.at(0)).rows()));
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.at(k);
    const ComplexMatrix h1 = h(t + (0.5 - offset) * dt);
    const ComplexMatrix h2 = h(t + (0.5 + offset) * dt);
    const ComplexMatrix omega = (Complex(0.0, -0.5 * dt)) * (h1 + h2) -
                                (std::sqrt(3.0) * dt * dt / 12.0) * (h2 * h1 - h1 * h2);
    out.push_back(expm(omega) * out.back());
  }
  return out;
}

}  // namespace

UnitarityClosure unitarity_closure(const ComplexMatrix& z) {
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  ComplexMatrix gamma1 = ComplexMatrix::identity(m) + z * z.adjoint();
  ComplexMatrix gamma2 = ComplexMatrix::identity(n) + z.adjoint() * z;
  ComplexMatrix w = -(inverse(gamma1) * z);
  return {std::move(w), std::move(gamma1), std::move(gamma2)};
}

ComplexMatrix assemble_tilde_U1(const ComplexMatrix& z) {
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  const auto closure = unitarity_closure(z);
  const auto upper = block_matrix(ComplexMatrix::identity(m), z, ComplexMatrix(n, m),
                                  ComplexMatrix::identity(n));
  const auto lower = block_matrix(ComplexMatrix::identity(m), ComplexMatrix(m, n),
                                  closure.w.adjoint(), ComplexMatrix::identity(n));
  return upper * lower;
}

ComplexMatrix tilde_U1_inverse(const ComplexMatrix& z) {
  const std::size_t m = z.rows();
  const std::size_t n = z.cols();
  const auto closure = unitarity_closure(z);
  const auto lower_inv = block_matrix(ComplexMatrix::identity(m), ComplexMatrix(m, n),
                                      -closure.w.adjoint(), ComplexMatrix::identity(n));
  const auto upper_inv = block_matrix(ComplexMatrix::identity(m), -z, ComplexMatrix(n, m),
                                      ComplexMatrix::identity(n));
  return lower_inv * upper_inv;
}

GaugeUnitarization gauge_unitarize(const ComplexMatrix& tilde_U1, const ComplexMatrix& gamma1,
                                   const ComplexMatrix& gamma2) {
  // gamma1 and gamma2 are >= I, so the singularity error cannot fire for valid input.
  const auto r1 = sqrt_hpd(gamma1);
  const auto r2 = sqrt_hpd(gamma2);
  ComplexMatrix gauge = block_diagonal(r1.sqrt, r2.inv_sqrt);
  ComplexMatrix u1 = tilde_U1 * gauge;
  return {std::move(u1), std::move(gauge)};
}

ComplexMatrix base_factor(const ComplexMatrix& z) {
  const auto closure = unitarity_closure(z);
  return gauge_unitarize(assemble_tilde_U1(z), closure.gamma1, closure.gamma2).U1;
}

SquareRoots gamma1_roots_closed_form(const ComplexMatrix& z) {
  require_column(z, "gamma1_roots_closed_form");
  const double g = gamma_scalar(z);
  const double sg = std::sqrt(g);
  const ComplexMatrix zz = z * z.adjoint();
  const auto id = ComplexMatrix::identity(z.rows());
  return {id + zz / (sg + 1.0), id - zz / (sg + g)};
}

ComplexMatrix inverse_sqrt_derivative(const ComplexMatrix& gamma, const ComplexMatrix& gamma_dot) {
  const auto eig = hermitian_eigendecomposition(gamma);
  const auto& q = eig.vectors;
  const ComplexMatrix rotated = q.adjoint() * gamma_dot * q;
  const std::size_t n = gamma.rows();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double ri = std::sqrt(eig.values[i]);
      const double rj = std::sqrt(eig.values[j]);
      const Complex sqrt_dot = rotated(i, j) / (ri + rj);
      d(i, j) = -sqrt_dot / (ri * rj);
    }
  return q * d * q.adjoint();
}

BlockPair effective_hamiltonian_tilde(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  require_conformable(blocks, z, "effective_hamiltonian_tilde");
  const auto& v = blocks.coupling;
  return {blocks.top - z * v.adjoint(), blocks.bottom + v.adjoint() * z};
}

namespace {

/// (i/2)[d(g^{-1/2})/dt, g^{1/2}] + 1/2 {g^{-1/2} x g^{1/2} + h.c.}
ComplexMatrix hermitian_block(const ComplexMatrix& gamma, const ComplexMatrix& gamma_dot,
                              const ComplexMatrix& x) {
  const auto roots = sqrt_hpd(gamma);
  const auto d_inv = inverse_sqrt_derivative(gamma, gamma_dot);
  const ComplexMatrix commutator = d_inv * roots.sqrt - roots.sqrt * d_inv;
  const ComplexMatrix similar = roots.inv_sqrt * x * roots.sqrt;
  ComplexMatrix out = (0.5 * kI) * commutator + 0.5 * (similar + similar.adjoint());
  return (out + out.adjoint()) * 0.5;
}

}  // namespace

BlockPair effective_hamiltonian_hermitian(const HamiltonianBlocks& blocks, const ComplexMatrix& z,
                                          const ComplexMatrix& z_dot) {
  require_conformable(blocks, z, "effective_hamiltonian_hermitian");
  require_conformable(blocks, z_dot, "effective_hamiltonian_hermitian");
  const auto& v = blocks.coupling;
  const auto closure = unitarity_closure(z);
  const ComplexMatrix gamma1_dot = z_dot * z.adjoint() + z * z_dot.adjoint();
  const ComplexMatrix gamma2_dot = z_dot.adjoint() * z + z.adjoint() * z_dot;
  return {hermitian_block(closure.gamma1, gamma1_dot, blocks.top - z * v.adjoint()),
          hermitian_block(closure.gamma2, gamma2_dot, blocks.bottom + z.adjoint() * v)};
}

double corner_rate(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  require_column(z, "corner_rate");
  require_conformable(blocks, z, "corner_rate");
  return blocks.bottom(0, 0).real() + real_overlap(z, blocks.coupling);
}

double geometric_phase_rate(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  require_column(z, "geometric_phase_rate");
  require_conformable(blocks, z, "geometric_phase_rate");
  const double g = gamma_scalar(z);
  const Complex h_nn = blocks.bottom(0, 0);
  const ComplexMatrix shifted = blocks.top - h_nn * ComplexMatrix::identity(blocks.top.rows());
  const double quadratic = (z.adjoint() * shifted * z)(0, 0).real();
  const double coupling = 2.0 * real_overlap(z, blocks.coupling);
  return (quadratic + coupling * (1.0 - 0.5 * g)) / g;
}

double dynamical_energy(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  require_column(z, "dynamical_energy");
  require_conformable(blocks, z, "dynamical_energy");
  const ComplexMatrix u1 = base_factor(z);
  const std::size_t last = u1.rows() - 1;
  return (u1.adjoint() * blocks.assemble() * u1)(last, last).real();
}

ComplexMatrix recursion_hamiltonian(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  require_column(z, "recursion_hamiltonian");
  require_conformable(blocks, z, "recursion_hamiltonian");
  const auto& v = blocks.coupling;
  const double sg = std::sqrt(gamma_scalar(z));
  const double overlap_sum = 2.0 * real_overlap(z, v);  // z^dagger V + V^dagger z
  ComplexMatrix out = blocks.top - (z * v.adjoint() + v * z.adjoint()) / (sg + 1.0);
  out -= (z * z.adjoint()) * (overlap_sum / (2.0 * (sg + 1.0) * (sg + 1.0)));
  return (out + out.adjoint()) * 0.5;
}

PhaseSeries corner_phase(const BlockedHamiltonian& h, const RiccatiSegment& segment) {
  if (h.block_size() != 1)
    throw UnsupportedConfiguration("corner_phase: defined for block size n = 1 only");
  struct Rates {
    double total, geo, dyn;
  };
  auto rates = [&h](double t, const ComplexMatrix& z, double toward) {
    const auto blocks = blocks_at(h, h.sample_time(t, toward));
    return Rates{corner_rate(blocks, z), geometric_phase_rate(blocks, z),
                 dynamical_energy(blocks, z)};
  };
  // Simpson on each step; the midpoint z comes from the segment's Hermite interpolant.
  const std::size_t size = segment.z.size();
  PhaseSeries out = zero_series(size);
  const double dt = segment.grid.step();
  for (std::size_t k = 1; k < size; ++k) {
    const double t_mid = segment.time(k - 1) + 0.5 * dt;
    const Rates left = rates(segment.time(k - 1), segment.z[k - 1], t_mid);
    const Rates mid = rates(t_mid, segment.z_at(t_mid), t_mid);
    const Rates right = rates(segment.time(k), segment.z[k], t_mid);
    const double w = dt / 6.0;
    out.mu_total[k] = out.mu_total[k - 1] - w * (left.total + 4.0 * mid.total + right.total);
    out.geometric[k] = out.geometric[k - 1] + w * (left.geo + 4.0 * mid.geo + right.geo);
    out.dynamical[k] = out.dynamical[k - 1] - w * (left.dyn + 4.0 * mid.dyn + right.dyn);
  }
  return out;
}

PhaseSeries corner_phase(const BlockedHamiltonian& h, const RiccatiTrajectory& trajectory) {
  PhaseSeries out = zero_series(trajectory.times.size());
  for (const auto& seg : trajectory.segments) join_series(out, corner_phase(h, seg), seg.first_index);
  return out;
}

FactoredEvolution factor_at(const ComplexMatrix& z, const ComplexMatrix& U2) {
  auto closure = unitarity_closure(z);
  auto tilde = assemble_tilde_U1(z);
  auto gauge = gauge_unitarize(tilde, closure.gamma1, closure.gamma2);
  std::optional<Complex> mu;
  if (z.rows() == 1 && z.cols() == 1) mu = su2_mu(gauge.U1 * U2);
  return {z,
          std::move(closure.w),
          std::move(closure.gamma1),
          std::move(closure.gamma2),
          std::move(tilde),
          std::move(gauge.gauge),
          std::move(gauge.U1),
          U2,
          std::nullopt,
          std::nullopt,
          std::nullopt,
          mu};
}

Complex su2_mu(const ComplexMatrix& U) {
  if (U.rows() != 2 || U.cols() != 2) throw ContractViolation("su2_mu: expected a 2x2 matrix");
  if (std::abs(U(1, 1)) == 0.0) throw ContractViolation("su2_mu: U_22 vanishes (pole)");
  return Complex(0.0, -2.0) * std::log(U(1, 1));
}

FactoredEvolution EvolutionPath::factors(std::size_t k) const {
  const auto s = trajectory.segment_of(k);
  const auto& seg = trajectory.segments[s];
  auto f = factor_at(seg.z[k - seg.first_index], fiber.at(k));
  if (phases) {
    f.mu_total = phases->mu_total[k];
    f.phase_geometric = phases->geometric[k];
    f.phase_dynamical = phases->dynamical[k];
  }
  return f;
}

EvolutionPath reconstruct_full(const RiccatiTrajectory& trajectory,
                               const FiberSolutions& fiber_solutions) {
  if (fiber_solutions.size() != trajectory.segments.size())
    throw ContractViolation("reconstruct_full: one fiber solution per segment required");
  for (std::size_t s = 0; s < trajectory.segments.size(); ++s)
    if (fiber_solutions[s].size() != trajectory.segments[s].z.size())
      throw ContractViolation("reconstruct_full: fiber grid does not match its segment");
  if (trajectory.times.size() != trajectory.z_samples.size())
    throw ContractViolation("reconstruct_full: inconsistent trajectory grid");

  const auto& first = trajectory.z_samples.front();
  const std::size_t dimension = first.rows() + first.cols();

  EvolutionPath path;
  path.trajectory = trajectory;
  path.times = trajectory.times;
  path.U.reserve(path.times.size());
  path.fiber.reserve(path.times.size());
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    const auto s = trajectory.segment_of(k);
    const auto& seg = trajectory.segments[s];
    const auto i = k - seg.first_index;
    const auto& u2 = fiber_solutions[s][i];
    path.fiber.push_back(u2);
    path.U.push_back(base_factor(seg.z[i]) * u2 * trajectory.accumulated_before(s, dimension));
  }
  return path;
}

std::vector<ComplexMatrix> solve_fiber(const BlockedHamiltonian& h, const RiccatiSegment& segment) {
  auto evaluator = [&h, &segment](double t) {
    const auto blocks = blocks_at(h, t);
    const auto z = segment.z_at(t);
    const auto pair = effective_hamiltonian_hermitian(blocks, z, riccati_rhs(blocks, z));
    return block_diagonal(pair.upper, pair.lower);
  };
  return propagate_magnus4(evaluator, segment.grid);
}

ComplexMatrix materialize_segment(const BlockedHamiltonian& h, const RiccatiSegment& segment) {
  return base_factor(segment.z.back()) * solve_fiber(h, segment).back();
}

namespace {

EvolutionPath finish_factorized(const BlockedHamiltonian& h, RiccatiTrajectory trajectory,
                                FiberSolutions fibers) {
  fibers.push_back(solve_fiber(h, trajectory.segments.back()));
  auto path = reconstruct_full(trajectory, fibers);
  if (h.block_size() == 1) path.phases = corner_phase(h, path.trajectory);
  return path;
}

}  // namespace

EvolutionPath factorized_solve(const BlockedHamiltonian& h, const TimeGrid& grid,
                               const RiccatiOptions& opts) {
  FiberSolutions fibers;
  auto materialize = [&](const RiccatiSegment& seg) {
    fibers.push_back(solve_fiber(h, seg));
    return base_factor(seg.z.back()) * fibers.back().back();
  };
  auto trajectory = integrate_riccati(h, grid, opts, materialize);
  return finish_factorized(h, std::move(trajectory), std::move(fibers));
}

EvolutionPath factorized_solve_so5(const SO5Coefficients& f, const TimeGrid& grid,
                                   const RiccatiOptions& opts) {
  const auto h = build_so5(f);
  FiberSolutions fibers;
  auto materialize = [&](const RiccatiSegment& seg) {
    fibers.push_back(solve_fiber(h, seg));
    return base_factor(seg.z.back()) * fibers.back().back();
  };
  auto so5 = integrate_so5_riccati(f, grid, opts, materialize);
  return finish_factorized(h, std::move(so5.trajectory), std::move(fibers));
}

// ---------------------------------------------------------------------------
// Hierarchical n = 1 reduction

namespace {

struct LevelResult {
  EvolutionPath path;
  std::vector<LevelPhases> levels;
};

struct SegmentResult {
  std::vector<ComplexMatrix> fiber;
  PhaseSeries phases;
  std::vector<LevelPhases> deeper;
};

LevelResult solve_level(const BlockedHamiltonian& h, const TimeGrid& grid,
                        const RiccatiOptions& opts);

/// Traceless reduced Hamiltonian for the next level, driven by this segment's z.
BlockedHamiltonian reduced_hamiltonian(const BlockedHamiltonian& h, const RiccatiSegment& seg) {
  const std::size_t reduced = h.dimension() - 1;
  auto segment = std::make_shared<const RiccatiSegment>(seg);
  auto evaluator = [h, segment, reduced](double t) {
    ComplexMatrix r = recursion_hamiltonian(blocks_at(h, t), segment->z_at(t));
    const Complex shift = r.trace() / static_cast<double>(reduced);
    for (std::size_t i = 0; i < reduced; ++i) r(i, i) -= shift;
    return r;
  };
  const double slack = 1e-9 * (1.0 + std::abs(seg.grid.t_end));
  return BlockedHamiltonian{reduced, 1, std::move(evaluator), seg.grid.t_start - slack,
                            seg.grid.t_end + slack}
      .with_breakpoints(h.breakpoints());
}

SegmentResult solve_segment(const BlockedHamiltonian& h, const RiccatiSegment& seg,
                            const RiccatiOptions& opts) {
  const std::size_t reduced = h.dimension() - 1;
  SegmentResult out;
  out.phases = corner_phase(h, seg);

  std::vector<ComplexMatrix> sub;
  if (reduced >= 2) {
    RiccatiOptions sub_opts = opts;
    sub_opts.forced_restarts.clear();  // indices refer to the outer grid
    sub_opts.estimate_error = false;   // only the outermost estimate is reported
    auto level = solve_level(reduced_hamiltonian(h, seg), seg.grid, sub_opts);
    sub = std::move(level.path.U);
    out.deeper = std::move(level.levels);
  } else {
    sub.assign(seg.z.size(), ComplexMatrix::identity(1));
  }

  // The upper block carries the subtracted trace as exp(-i mu / (N-1)).
  out.fiber.reserve(seg.z.size());
  for (std::size_t k = 0; k < seg.z.size(); ++k) {
    const double mu = out.phases.mu_total[k];
    const Complex upper_phase = std::exp(Complex(0.0, -mu / static_cast<double>(reduced)));
    out.fiber.push_back(
        block_diagonal(upper_phase * sub[k], ComplexMatrix::scalar(std::exp(Complex(0.0, mu)))));
  }
  return out;
}

LevelResult solve_level(const BlockedHamiltonian& h, const TimeGrid& grid,
                        const RiccatiOptions& opts) {
  if (h.block_size() != 1)
    throw UnsupportedConfiguration("hierarchical_solve: requires block size n = 1");
  std::vector<SegmentResult> results;
  auto materialize = [&](const RiccatiSegment& seg) {
    results.push_back(solve_segment(h, seg, opts));
    return base_factor(seg.z.back()) * results.back().fiber.back();
  };
  auto trajectory = integrate_riccati(h, grid, opts, materialize);
  results.push_back(solve_segment(h, trajectory.segments.back(), opts));

  FiberSolutions fibers;
  fibers.reserve(results.size());
  for (auto& r : results) fibers.push_back(std::move(r.fiber));

  LevelResult out;
  out.path = reconstruct_full(trajectory, fibers);

  const std::size_t size = grid.size();
  PhaseSeries own = zero_series(size);
  const std::size_t depth = results.front().deeper.size();
  std::vector<LevelPhases> deeper(depth);
  for (std::size_t d = 0; d < depth; ++d) {
    deeper[d].dimension = results.front().deeper[d].dimension;
    deeper[d].phases = zero_series(size);
  }
  for (std::size_t s = 0; s < results.size(); ++s) {
    const auto first = out.path.trajectory.segments[s].first_index;
    join_series(own, results[s].phases, first);
    for (std::size_t d = 0; d < depth; ++d)
      join_series(deeper[d].phases, results[s].deeper[d].phases, first);
  }
  out.path.phases = own;
  out.levels.push_back({h.dimension(), std::move(own)});
  for (auto& d : deeper) out.levels.push_back(std::move(d));
  return out;
}

}  // namespace

HierarchicalSolution hierarchical_solve(const BlockedHamiltonian& h, const TimeGrid& grid,
                                        const RiccatiOptions& opts) {
  auto level = solve_level(h, grid, opts);
  return {std::move(level.path), std::move(level.levels)};
}

}  // namespace unitint
