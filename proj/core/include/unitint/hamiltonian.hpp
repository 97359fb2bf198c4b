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
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include "unitint/linalg.hpp"

namespace unitint {

/// The three independent blocks of an N x N Hermitian matrix partitioned as
/// (N-n, n): [[top, coupling], [coupling^dagger, bottom]].
struct HamiltonianBlocks {
  ComplexMatrix top;       // (N-n) x (N-n)
  ComplexMatrix coupling;  // (N-n) x n
  ComplexMatrix bottom;    // n x n

  ComplexMatrix assemble() const;
  std::size_t size() const { return top.rows() + bottom.rows(); }
  std::size_t block_size() const { return bottom.rows(); }
};

/// Split a matrix into its (N-n, n) blocks without any validation.
HamiltonianBlocks split_blocks(const ComplexMatrix& h, std::size_t n);

using MatrixEvaluator = std::function<ComplexMatrix(double)>;

/// Time-dependent N-level Hamiltonian (hbar = 1) with a declared block size n.
class BlockedHamiltonian {
 public:
  BlockedHamiltonian(std::size_t dimension, std::size_t block_size, MatrixEvaluator evaluator,
                     double t_min = 0.0,
                     double t_max = std::numeric_limits<double>::infinity());

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t block_size() const noexcept { return block_size_; }
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }

  /// Raw evaluation, no model checks.
  ComplexMatrix operator()(double t) const { return evaluator_(t); }

  /// Evaluation with domain, Hermiticity and tracelessness checks (ModelError / ContractViolation).
  ComplexMatrix at(double t, double tol = tolerance::kPredicate) const;

  /// Same Hamiltonian, different partition.
  BlockedHamiltonian with_block_size(std::size_t block_size) const;

  /// Same Hamiltonian with declared jump times.
  BlockedHamiltonian with_breakpoints(std::vector<double> breakpoints) const;
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  /// Time at which to sample H for a step lying on the `toward` side of t. Returns t unless t
  /// is a breakpoint, in which case the sample moves a hair into that side.
  double sample_time(double t, double toward) const;

  const MatrixEvaluator& evaluator() const noexcept { return evaluator_; }

 private:
  std::size_t dimension_;
  std::size_t block_size_;
  MatrixEvaluator evaluator_;
  double t_min_;
  double t_max_;
  std::vector<double> breakpoints_;
};

/// Checked evaluation followed by the (N-n, n) split.
HamiltonianBlocks blocks_at(const BlockedHamiltonian& h, double t,
                            double tol = tolerance::kPredicate);

// ---------------------------------------------------------------------------
// Families

using Vec3 = std::array<double, 3>;
using FieldEvaluator = std::function<Vec3(double)>;

/// Spin-1/2 in a magnetic field: H(t) = -1/2 sigma . B(t).
struct SpinHalfField {
  FieldEvaluator field;

  ComplexMatrix matrix(const Vec3& b) const;
  BlockedHamiltonian hamiltonian() const;
};

/// Field B0 + amplitude * (cos wt, sin wt, 0).
SpinHalfField rotating_field(const Vec3& static_part, double amplitude, double omega);
SpinHalfField constant_field(const Vec3& b);

BlockedHamiltonian constant_hamiltonian(const ComplexMatrix& h, std::size_t block_size);

/// Piecewise-constant schedule: pieces[i] holds on [breaks[i-1], breaks[i]) with breaks
/// strictly increasing; pieces.size() == breaks.size() + 1. The breaks are declared on the
/// result, so integrators sample each step from inside the piece it lies in.
BlockedHamiltonian piecewise_hamiltonian(std::vector<double> breaks,
                                         std::vector<ComplexMatrix> pieces,
                                         std::size_t block_size);

/// Random Hermitian traceless matrix with standard normal real/imaginary parts.
ComplexMatrix random_hermitian_traceless(std::size_t dimension, std::mt19937_64& rng,
                                         double scale = 1.0);

struct TrigRandomOptions {
  std::size_t harmonics = 2;
  double omega = 1.0;
  double scale = 1.0;
};

/// H(t) = A0 + sum_k (A_k cos(k w t) + B_k sin(k w t)), coefficients Hermitian traceless and
/// drawn from a generator seeded with `seed`.
BlockedHamiltonian trig_random_hamiltonian(std::size_t dimension, std::size_t block_size,
                                           std::uint64_t seed, const TrigRandomOptions& opts = {});

// ---------------------------------------------------------------------------
// SO(5) two-qubit family

/// Real 5x5 matrix, zero-based indices (F[0][1] is F_12).
using Real5x5 = std::array<std::array<double, 5>, 5>;

bool is_antisymmetric(const Real5x5& f, double tol = tolerance::kAlgebra);

/// Builds an antisymmetric matrix from one-based (mu, nu, value) triples, setting
/// F_{mu nu} = value and F_{nu mu} = -value.
Real5x5 antisymmetric_from(std::initializer_list<std::tuple<int, int, double>> entries);

struct SO5Coefficients {
  std::function<Real5x5(double)> evaluate;
};

/// The 4x4 two-qubit matrix
/// F21 s2z - F31 s2y + F32 s2x - F4i s1z s2i + F5i s1x s2i - F54 s1y
/// with s1 acting on the first tensor factor.
/// Throws ModelError when F is not antisymmetric.
ComplexMatrix so5_matrix(const Real5x5& f);

/// 4-level Hamiltonian with block size 2.
BlockedHamiltonian build_so5(SO5Coefficients coefficients);

}  // namespace unitint
