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

#include "unitint/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <tuple>
#include <utility>

#include "unitint/errors.hpp"

namespace unitint {

ComplexMatrix HamiltonianBlocks::assemble() const {
  return block_matrix(top, coupling, coupling.adjoint(), bottom);
}

HamiltonianBlocks split_blocks(const ComplexMatrix& h, std::size_t n) {
  if (!h.is_square() || n < 1 || n >= h.rows())
    throw ContractViolation("split_blocks: need a square matrix and 1 <= n < N");
  const std::size_t upper = h.rows() - n;
  return {h.block(0, 0, upper, upper), h.block(0, upper, upper, n), h.block(upper, upper, n, n)};
}

BlockedHamiltonian::BlockedHamiltonian(std::size_t dimension, std::size_t block_size,
                                       MatrixEvaluator evaluator, double t_min, double t_max)
    : dimension_(dimension),
      block_size_(block_size),
      evaluator_(std::move(evaluator)),
      t_min_(t_min),
      t_max_(t_max) {
  if (dimension_ < 2) throw ContractViolation("BlockedHamiltonian: N must be at least 2");
  if (block_size_ < 1 || 2 * block_size_ > dimension_)
    throw ContractViolation("BlockedHamiltonian: block size must satisfy 1 <= n <= N/2");
  if (!evaluator_) throw ContractViolation("BlockedHamiltonian: empty evaluator");
  if (!(t_min_ < t_max_)) throw ContractViolation("BlockedHamiltonian: empty time domain");
}

ComplexMatrix BlockedHamiltonian::at(double t, double tol) const {
  if (t < t_min_ || t > t_max_) {
    std::ostringstream msg;
    msg << "Hamiltonian evaluated at t=" << t << " outside [" << t_min_ << ", " << t_max_ << "]";
    throw ContractViolation(msg.str());
  }
  ComplexMatrix h = evaluator_(t);
  if (h.rows() != dimension_ || h.cols() != dimension_)
    throw ModelError("Hamiltonian evaluator returned a matrix of the wrong size");
  const double scale = std::max(1.0, h.frobenius_norm());
  if (h.hermiticity_residual() > tol * scale) {
    std::ostringstream msg;
    msg << "Hamiltonian is not Hermitian at t=" << t << " (residual " << h.hermiticity_residual()
        << ")";
    throw ModelError(msg.str());
  }
  if (std::abs(h.trace()) > tol * scale) {
    std::ostringstream msg;
    msg << "Hamiltonian is not traceless at t=" << t << " (trace " << h.trace() << ")";
    throw ModelError(msg.str());
  }
  return h;
}

BlockedHamiltonian BlockedHamiltonian::with_block_size(std::size_t block_size) const {
  BlockedHamiltonian out{dimension_, block_size, evaluator_, t_min_, t_max_};
  out.breakpoints_ = breakpoints_;
  return out;
}

BlockedHamiltonian BlockedHamiltonian::with_breakpoints(std::vector<double> breakpoints) const {
  BlockedHamiltonian out = *this;
  std::sort(breakpoints.begin(), breakpoints.end());
  out.breakpoints_ = std::move(breakpoints);
  return out;
}

double BlockedHamiltonian::sample_time(double t, double toward) const {
  for (double b : breakpoints_)
    if (std::abs(t - b) <= 1e-12 * std::max(1.0, std::abs(b))) return t + 1e-6 * (toward - t);
  return t;
}

HamiltonianBlocks blocks_at(const BlockedHamiltonian& h, double t, double tol) {
  return split_blocks(h.at(t, tol), h.block_size());
}

ComplexMatrix SpinHalfField::matrix(const Vec3& b) const {
  return -0.5 * (b[0] * pauli::x() + b[1] * pauli::y() + b[2] * pauli::z());
}

BlockedHamiltonian SpinHalfField::hamiltonian() const {
  auto self = *this;
  return {2, 1, [self](double t) { return self.matrix(self.field(t)); }};
}

SpinHalfField rotating_field(const Vec3& static_part, double amplitude, double omega) {
  return {[=](double t) {
    return Vec3{static_part[0] + amplitude * std::cos(omega * t),
                static_part[1] + amplitude * std::sin(omega * t), static_part[2]};
  }};
}

SpinHalfField constant_field(const Vec3& b) {
  return {[b](double) { return b; }};
}

BlockedHamiltonian constant_hamiltonian(const ComplexMatrix& h, std::size_t block_size) {
  return {h.rows(), block_size, [h](double) { return h; }};
}

BlockedHamiltonian piecewise_hamiltonian(std::vector<double> breaks,
                                         std::vector<ComplexMatrix> pieces,
                                         std::size_t block_size) {
  if (pieces.size() != breaks.size() + 1)
    throw ContractViolation("piecewise_hamiltonian: need one more piece than breakpoints");
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end())
    throw ContractViolation("piecewise_hamiltonian: breakpoints must be strictly increasing");
  const std::size_t dim = pieces.front().rows();
  for (const auto& p : pieces)
    if (p.rows() != dim || p.cols() != dim)
      throw ContractViolation("piecewise_hamiltonian: pieces differ in size");
  auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<ComplexMatrix>>>(
      breaks, std::move(pieces));
  const BlockedHamiltonian h{dim, block_size, [data](double t) {
                               const auto& [b, p] = *data;
                               // A break point belongs to the piece that starts there.
                               const auto idx = static_cast<std::size_t>(
                                   std::upper_bound(b.begin(), b.end(), t) - b.begin());
                               return p[idx];
                             }};
  return h.with_breakpoints(std::move(breaks));
}

ComplexMatrix random_hermitian_traceless(std::size_t dimension, std::mt19937_64& rng,
                                         double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(dimension, dimension);
  for (std::size_t r = 0; r < dimension; ++r)
    for (std::size_t c = 0; c < dimension; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(r, c) = Complex(re, im);
    }
  ComplexMatrix h = (a + a.adjoint()) * (0.5 * scale);
  const Complex shift = h.trace() / static_cast<double>(dimension);
  for (std::size_t i = 0; i < dimension; ++i) h(i, i) = (h(i, i) - shift).real();
  return h;
}

BlockedHamiltonian trig_random_hamiltonian(std::size_t dimension, std::size_t block_size,
                                           std::uint64_t seed, const TrigRandomOptions& opts) {
  std::mt19937_64 rng(seed);
  struct Coefficients {
    ComplexMatrix constant;
    std::vector<ComplexMatrix> cosines;
    std::vector<ComplexMatrix> sines;
    double omega;
  };
  auto c = std::make_shared<Coefficients>(
      Coefficients{random_hermitian_traceless(dimension, rng, opts.scale), {}, {}, opts.omega});
  for (std::size_t k = 1; k <= opts.harmonics; ++k) {
    // Higher harmonics get smaller amplitudes to keep H smooth.
    const double amp = opts.scale / static_cast<double>(k);
    c->cosines.push_back(random_hermitian_traceless(dimension, rng, amp));
    c->sines.push_back(random_hermitian_traceless(dimension, rng, amp));
  }
  return {dimension, block_size, [c](double t) {
            ComplexMatrix h = c->constant;
            for (std::size_t k = 0; k < c->cosines.size(); ++k) {
              const double phase = static_cast<double>(k + 1) * c->omega * t;
              h += std::cos(phase) * c->cosines[k];
              h += std::sin(phase) * c->sines[k];
            }
            return h;
          }};
}

bool is_antisymmetric(const Real5x5& f, double tol) {
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (std::abs(f[i][j] + f[j][i]) > tol) return false;
  return true;
}

Real5x5 antisymmetric_from(std::initializer_list<std::tuple<int, int, double>> entries) {
  Real5x5 f{};
  for (const auto& [mu, nu, value] : entries) {
    if (mu < 1 || mu > 5 || nu < 1 || nu > 5 || mu == nu)
      throw ContractViolation("antisymmetric_from: indices must be distinct and in 1..5");
    f[mu - 1][nu - 1] = value;
    f[nu - 1][mu - 1] = -value;
  }
  return f;
}

ComplexMatrix so5_matrix(const Real5x5& f) {
  if (!is_antisymmetric(f)) throw ModelError("SO(5) coefficient matrix is not antisymmetric");
  const auto id = ComplexMatrix::identity(2);
  const auto sx = pauli::x();
  const auto sy = pauli::y();
  const auto sz = pauli::z();
  // One-based accessor to keep the index pattern readable.
  auto F = [&](int mu, int nu) { return f[mu - 1][nu - 1]; };

  ComplexMatrix h = F(2, 1) * kron(id, sz) - F(3, 1) * kron(id, sy) + F(3, 2) * kron(id, sx);
  for (int i = 1; i <= 3; ++i) {
    const auto si = pauli::by_index(static_cast<std::size_t>(i - 1));
    h -= F(4, i) * kron(sz, si);
    h += F(5, i) * kron(sx, si);
  }
  h -= F(5, 4) * kron(sy, id);
  return h;
}

BlockedHamiltonian build_so5(SO5Coefficients coefficients) {
  if (!coefficients.evaluate) throw ContractViolation("build_so5: empty coefficient evaluator");
  return {4, 2, [c = std::move(coefficients)](double t) { return so5_matrix(c.evaluate(t)); }};
}

}  // namespace unitint
