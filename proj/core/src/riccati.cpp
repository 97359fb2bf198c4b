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

#include "unitint/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "unitint/errors.hpp"
#include "unitint/factorization.hpp"

namespace unitint {

ComplexMatrix riccati_rhs(const HamiltonianBlocks& blocks, const ComplexMatrix& z) {
  const auto& v = blocks.coupling;
  if (z.rows() != v.rows() || z.cols() != v.cols()) {
    std::ostringstream msg;
    msg << "riccati_rhs: z is " << z.rows() << "x" << z.cols() << ", expected " << v.rows() << "x"
        << v.cols();
    throw ContractViolation(msg.str());
  }
  ComplexMatrix inner = v.adjoint() * z + blocks.bottom;
  ComplexMatrix bracket = blocks.top * z + v - z * inner;
  return Complex(0.0, -1.0) * bracket;
}

ComplexMatrix RiccatiSegment::z_at(double t) const {
  if (z.empty()) throw ContractViolation("RiccatiSegment::z_at: empty segment");
  if (steps() == 0) return z.front();
  const double h = grid.step();
  const double x = (t - grid.t_start) / h;
  const auto k = static_cast<std::size_t>(
      std::clamp(std::floor(x), 0.0, static_cast<double>(steps() - 1)));
  const double s = x - static_cast<double>(k);
  if (s == 0.0) return z[k];
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const auto& right_slope = z_dot_left.empty() ? z_dot[k + 1] : z_dot_left[k + 1];
  return h00 * z[k] + (h10 * h) * z_dot[k] + h01 * z[k + 1] + (h11 * h) * right_slope;
}

std::size_t RiccatiTrajectory::segment_of(std::size_t k) const {
  std::size_t s = 0;
  while (s + 1 < segments.size() && segments[s + 1].first_index <= k) ++s;
  return s;
}

ComplexMatrix RiccatiTrajectory::accumulated_before(std::size_t s, std::size_t dimension) const {
  if (s == 0) return ComplexMatrix::identity(dimension);
  return restarts.at(s - 1).accumulated;
}

namespace {

ComplexMatrix add_scaled(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  return a + scale * b;
}

SO5State add_scaled(const SO5State& a, const SO5State& b, double scale) {
  SO5State out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = a[i] + scale * b[i];
  return out;
}

double diff_norm(const ComplexMatrix& a, const ComplexMatrix& b) { return distance(a, b); }

double diff_norm(const SO5State& a, const SO5State& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  // Frobenius norm of the 2x2 rendering is sqrt(2) times the Euclidean norm.
  return std::sqrt(2.0 * sum);
}

template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double t, double h, const State& s, const State& k1) {
  const double mid = t + 0.5 * h;
  const State k2 = rhs(mid, add_scaled(s, k1, 0.5 * h), mid);
  const State k3 = rhs(mid, add_scaled(s, k2, 0.5 * h), mid);
  const State k4 = rhs(t + h, add_scaled(s, k3, h), mid);
  State out = add_scaled(s, k1, h / 6.0);
  out = add_scaled(out, k2, h / 3.0);
  out = add_scaled(out, k3, h / 3.0);
  return add_scaled(out, k4, h / 6.0);
}

template <class State>
struct Run {
  RiccatiTrajectory trajectory;
  std::vector<State> flat;
};

// rhs(t, state, toward) samples the model at t as seen from a step on the `toward` side;
// splits(t) tells whether the two sides differ at t.
template <class State, class Rhs, class Splits, class ToMatrix>
Run<State> run_segments(const TimeGrid& grid, std::size_t dimension, const State& zero,
                        const Rhs& rhs, const Splits& splits, const ToMatrix& to_matrix,
                        const RiccatiOptions& opts, const SegmentMaterializer& materialize) {
  grid.validate();
  if (!(opts.z_max > 1.0)) throw ContractViolation("integrate_riccati: z_max must exceed 1");

  Run<State> out;
  auto& traj = out.trajectory;
  traj.grid = grid;
  traj.times = grid.times();

  std::vector<std::size_t> forced = opts.forced_restarts;
  std::sort(forced.begin(), forced.end());
  auto next_forced = forced.begin();

  const double h = grid.step();
  std::vector<State> states{zero};
  std::vector<State> derivs{rhs(grid.at(0), zero, grid.at(0) + 0.5 * h)};
  std::vector<State> derivs_left{derivs.front()};
  std::vector<std::vector<State>> segment_states;
  std::size_t seg_start = 0;
  ComplexMatrix accumulated = ComplexMatrix::identity(dimension);

  auto close_segment = [&](std::size_t end) {
    RiccatiSegment seg;
    seg.grid = grid.window(seg_start, end);
    seg.first_index = seg_start;
    seg.z.reserve(states.size());
    seg.z_dot.reserve(states.size());
    seg.z_dot_left.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      seg.z.push_back(to_matrix(states[i]));
      seg.z_dot.push_back(to_matrix(derivs[i]));
      seg.z_dot_left.push_back(to_matrix(derivs_left[i]));
    }
    segment_states.push_back(states);
    return seg;
  };

  std::size_t k = 0;
  while (k < grid.steps) {
    const double t = grid.at(k);
    while (next_forced != forced.end() && *next_forced < k) ++next_forced;
    const bool forced_here = next_forced != forced.end() && *next_forced == k && k > seg_start;

    const State next = rk4_step(rhs, t, h, states.back(), derivs.back());
    const bool blown = !(diff_norm(next, zero) < opts.z_max);

    if (forced_here || blown) {
      if (k - seg_start < opts.min_segment_steps) {
        std::ostringstream msg;
        msg << "Riccati restart requested after " << (k - seg_start) << " steps at t=" << t
            << ": trajectory passes too near the coordinate singularity";
        throw StiffnessError(msg.str(), t, static_cast<int>(dimension));
      }
      auto seg = close_segment(k);
      accumulated = materialize(seg) * accumulated;
      traj.restarts.push_back({t, k, accumulated});
      traj.segments.push_back(std::move(seg));
      if (forced_here) ++next_forced;
      seg_start = k;
      states.assign(1, zero);
      derivs.assign(1, rhs(t, zero, t + 0.5 * h));
      derivs_left.assign(1, derivs.front());
      continue;
    }

    if (opts.estimate_error) {
      const State half = rk4_step(rhs, t, 0.5 * h, states.back(), derivs.back());
      const State twice =
          rk4_step(rhs, t + 0.5 * h, 0.5 * h, half, rhs(t + 0.5 * h, half, t + 0.75 * h));
      traj.est_error += diff_norm(next, twice) / 15.0;
    }
    const double t_next = grid.at(k + 1);
    derivs.push_back(rhs(t_next, next, t_next + 0.5 * h));
    derivs_left.push_back(splits(t_next) ? rhs(t_next, next, t_next - 0.5 * h) : derivs.back());
    states.push_back(next);
    ++k;
  }
  traj.segments.push_back(close_segment(grid.steps));

  out.flat.assign(grid.size(), zero);
  traj.z_samples.assign(grid.size(), to_matrix(zero));
  for (std::size_t s = 0; s < traj.segments.size(); ++s) {
    const auto& seg = traj.segments[s];
    for (std::size_t i = 0; i < seg.z.size(); ++i) {
      traj.z_samples[seg.first_index + i] = seg.z[i];
      out.flat[seg.first_index + i] = segment_states[s][i];
    }
  }
  // Restart points belong to the later segment.
  for (const auto& r : traj.restarts) {
    traj.z_samples[r.step_index] = to_matrix(zero);
    out.flat[r.step_index] = zero;
  }
  return out;
}

}  // namespace

RiccatiTrajectory integrate_riccati(const BlockedHamiltonian& h, const TimeGrid& grid,
                                    const RiccatiOptions& opts, SegmentMaterializer materialize) {
  if (!materialize)
    materialize = [&h](const RiccatiSegment& seg) { return materialize_segment(h, seg); };
  const std::size_t n = h.block_size();
  const ComplexMatrix zero(h.dimension() - n, n);
  auto rhs = [&h](double t, const ComplexMatrix& z, double toward) {
    return riccati_rhs(blocks_at(h, h.sample_time(t, toward)), z);
  };
  auto splits = [&h](double t) { return h.sample_time(t, t + 1.0) != t; };
  auto identity = [](const ComplexMatrix& z) { return z; };
  return run_segments(grid, h.dimension(), zero, rhs, splits, identity, opts, materialize)
      .trajectory;
}

ComplexMatrix so5_state_matrix(const SO5State& z) {
  ComplexMatrix out = z[3] * ComplexMatrix::identity(2);
  for (std::size_t k = 0; k < 3; ++k) out -= Complex(0.0, z[k]) * pauli::by_index(k);
  return out;
}

SO5State so5_state_from_matrix(const ComplexMatrix& z) {
  if (z.rows() != 2 || z.cols() != 2)
    throw ContractViolation("so5_state_from_matrix: expected a 2x2 matrix");
  // tr(z) = 2 z4, tr(z sigma_k) = -2i z_k.
  SO5State out;
  out[3] = 0.5 * z.trace().real();
  for (std::size_t k = 0; k < 3; ++k)
    out[k] = (0.5 * Complex(0.0, 1.0) * (z * pauli::by_index(k)).trace()).real();
  return out;
}

SO5State so5_rhs(const Real5x5& f, const SO5State& z) {
  // Zero-based: index 4 is the fifth axis, indices 0..3 are z1..z4.
  double zz = 0.0;
  double f5z = 0.0;
  for (std::size_t nu = 0; nu < 4; ++nu) {
    zz += z[nu] * z[nu];
    f5z += f[4][nu] * z[nu];
  }
  SO5State out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    double rotation = 0.0;
    for (std::size_t nu = 0; nu < 4; ++nu) rotation += f[mu][nu] * z[nu];
    out[mu] = f[4][mu] * (1.0 - zz) + 2.0 * rotation + 2.0 * f5z * z[mu];
  }
  return out;
}

SO5Trajectory integrate_so5_riccati(const SO5Coefficients& f, const TimeGrid& grid,
                                    const RiccatiOptions& opts, SegmentMaterializer materialize) {
  if (!materialize) {
    auto h = build_so5(f);
    materialize = [h](const RiccatiSegment& seg) { return materialize_segment(h, seg); };
  }
  auto rhs = [&f](double t, const SO5State& z, double) {
    const Real5x5 coeffs = f.evaluate(t);
    if (!is_antisymmetric(coeffs)) throw ModelError("SO(5) coefficients are not antisymmetric");
    return so5_rhs(coeffs, z);
  };
  auto splits = [](double) { return false; };
  auto run = run_segments(grid, 4, SO5State{}, rhs, splits, so5_state_matrix, opts, materialize);
  return {std::move(run.trajectory), std::move(run.flat)};
}

}  // namespace unitint
