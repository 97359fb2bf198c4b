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


#include <cmath>
#include <random>

#include "doctest.h"
#include "unitint/errors.hpp"
#include "unitint/hamiltonian.hpp"

using namespace unitint;

namespace {
constexpr Complex kI{0.0, 1.0};
}

TEST_CASE("split and assemble blocks") {
  std::mt19937_64 rng(11);
  const auto h = random_hermitian_traceless(5, rng);
  const auto blocks = split_blocks(h, 2);
  CHECK(blocks.top.rows() == 3);
  CHECK(blocks.coupling.cols() == 2);
  CHECK(blocks.block_size() == 2);
  CHECK(distance(blocks.assemble(), h) == 0.0);
  CHECK_THROWS_AS(split_blocks(h, 0), ContractViolation);
  CHECK_THROWS_AS(split_blocks(h, 5), ContractViolation);
}

TEST_CASE("blocked hamiltonian rejects bad input") {
  const auto zero = [](double) { return ComplexMatrix::zeros(3, 3); };
  CHECK_THROWS_AS(BlockedHamiltonian(1, 1, zero), ContractViolation);
  CHECK_THROWS_AS(BlockedHamiltonian(3, 2, zero), ContractViolation);
  CHECK_THROWS_AS(BlockedHamiltonian(3, 1, {}), ContractViolation);

  const BlockedHamiltonian wrong_size(2, 1, zero);
  CHECK_THROWS_AS(wrong_size.at(0.0), ModelError);
  const BlockedHamiltonian not_hermitian(
      2, 1, [](double) { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; });
  CHECK_THROWS_AS(not_hermitian.at(0.0), ModelError);
  const BlockedHamiltonian traced(2, 1, [](double) { return ComplexMatrix::identity(2); });
  CHECK_THROWS_AS(traced.at(0.0), ModelError);
  const BlockedHamiltonian bounded(2, 1, [](double) { return pauli::z(); }, 0.0, 1.0);
  CHECK_THROWS_AS(bounded.at(2.0), ContractViolation);
}

TEST_CASE("spin half matrix") {
  const auto field = constant_field({0.3, -0.2, 0.5});
  const auto m = field.matrix({0.3, -0.2, 0.5});
  const auto expected = -0.5 * (0.3 * pauli::x() - 0.2 * pauli::y() + 0.5 * pauli::z());
  CHECK(distance(m, expected) < 1e-15);
  CHECK(field.hamiltonian().dimension() == 2);
}

TEST_CASE("rotating field") {
  const auto field = rotating_field({0.0, 0.0, 1.0}, 0.5, 2.0);
  const auto b = field.field(0.25);
  CHECK(b[0] == doctest::Approx(0.5 * std::cos(0.5)));
  CHECK(b[1] == doctest::Approx(0.5 * std::sin(0.5)));
  CHECK(b[2] == doctest::Approx(1.0));
}

TEST_CASE("so5 matrix blocks") {
  SUBCASE("F54 couples the blocks through i c I") {
    const double c = 0.8;
    const auto blocks = split_blocks(so5_matrix(antisymmetric_from({{5, 4, c}})), 2);
    CHECK(distance(blocks.coupling, kI * c * ComplexMatrix::identity(2)) < 1e-15);
    CHECK(blocks.top.frobenius_norm() == 0.0);
    CHECK(blocks.bottom.frobenius_norm() == 0.0);
  }
  SUBCASE("F21 acts on the second factor only") {
    const double a = -1.3;
    const auto blocks = split_blocks(so5_matrix(antisymmetric_from({{2, 1, a}})), 2);
    CHECK(distance(blocks.top, a * pauli::z()) < 1e-15);
    CHECK(distance(blocks.bottom, a * pauli::z()) < 1e-15);
    CHECK(blocks.coupling.frobenius_norm() == 0.0);
  }
  SUBCASE("random coefficients give a hermitian traceless matrix") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> normal;
    Real5x5 f{};
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = r + 1; c < 5; ++c) {
        f[r][c] = normal(rng);
        f[c][r] = -f[r][c];
      }
    const auto m = so5_matrix(f);
    CHECK(m.is_hermitian(1e-14));
    CHECK(m.is_traceless(1e-14));
  }
  Real5x5 bad{};
  bad[0][1] = 1.0;
  CHECK_THROWS_AS(so5_matrix(bad), ModelError);
  CHECK_THROWS_AS(antisymmetric_from({{3, 3, 1.0}}), ContractViolation);
}

TEST_CASE("so5 blocks follow the compact block formula") {
  // top, bottom = (-+F4k - 1/2 eps_ijk F_ij) s_k, V = i F54 I + F5i s_i, indices 1-based.
  auto eps = [](int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; };
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    Real5x5 f{};
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = r + 1; c < 5; ++c) {
        f[r][c] = normal(rng);
        f[c][r] = -f[r][c];
      }
    auto F = [&](int a, int b) { return f[a - 1][b - 1]; };
    ComplexMatrix top(2, 2);
    ComplexMatrix bottom(2, 2);
    ComplexMatrix coupling = kI * F(5, 4) * ComplexMatrix::identity(2);
    for (int k = 1; k <= 3; ++k) {
      double rotation = 0.0;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) rotation -= 0.5 * eps(i, j, k) * F(i, j);
      const auto sigma = pauli::by_index(static_cast<std::size_t>(k - 1));
      top += (-F(4, k) + rotation) * sigma;
      bottom += (F(4, k) + rotation) * sigma;
      coupling += F(5, k) * sigma;
    }
    const auto blocks = split_blocks(so5_matrix(f), 2);
    CHECK(distance(blocks.top, top) < 1e-14);
    CHECK(distance(blocks.bottom, bottom) < 1e-14);
    CHECK(distance(blocks.coupling, coupling) < 1e-14);
  }
}

TEST_CASE("piecewise schedule") {
  const auto h = piecewise_hamiltonian({0.5}, {pauli::z(), pauli::x()}, 1);
  CHECK(distance(h(0.25), pauli::z()) == 0.0);
  CHECK(distance(h(0.75), pauli::x()) == 0.0);
  CHECK(distance(h(0.5), pauli::x()) == 0.0);
  REQUIRE(h.breakpoints().size() == 1);
  CHECK(h.sample_time(0.5, 0.4) < 0.5);
  CHECK(h.sample_time(0.5, 0.6) > 0.5);
  CHECK(h.sample_time(0.3, 0.6) == 0.3);
  CHECK(h.with_block_size(1).breakpoints().size() == 1);
  CHECK_THROWS_AS(piecewise_hamiltonian({0.5}, {pauli::z()}, 1), ContractViolation);
  CHECK_THROWS_AS(piecewise_hamiltonian({0.5, 0.2}, {pauli::z(), pauli::x(), pauli::y()}, 1),
                  ContractViolation);
}

TEST_CASE("trig random hamiltonian is seeded") {
  const auto a = trig_random_hamiltonian(4, 1, 9);
  const auto b = trig_random_hamiltonian(4, 1, 9);
  const auto c = trig_random_hamiltonian(4, 1, 10);
  CHECK(a(0.3) == b(0.3));
  CHECK(distance(a(0.3), c(0.3)) > 0.0);
  CHECK(a.at(0.7).is_hermitian());
  CHECK(a.at(0.7).is_traceless());
}
