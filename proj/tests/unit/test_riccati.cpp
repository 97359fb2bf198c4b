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
#include "unitint/oracle.hpp"
#include "unitint/riccati.hpp"

using namespace unitint;

namespace {

constexpr Complex kI{0.0, 1.0};

// z read off an exact evolution: top-right block times the inverse of the bottom-right block.
ComplexMatrix z_from(const ComplexMatrix& u, std::size_t n) {
  const std::size_t m = u.rows() - n;
  return u.block(0, m, m, n) * inverse(u.block(m, m, n, n));
}

}  // namespace

TEST_CASE("riccati rhs at z = 0 is -iV") {
  std::mt19937_64 rng(21);
  const auto blocks = split_blocks(random_hermitian_traceless(5, rng), 2);
  const auto rhs = riccati_rhs(blocks, ComplexMatrix::zeros(3, 2));
  CHECK(distance(rhs, -kI * blocks.coupling) < 1e-15);
}

TEST_CASE("spin half precession about x") {
  // H = -B sigma_x / 2, z(t) = i tan(B t / 2).
  const double b = 0.9;
  const auto h = constant_field({b, 0.0, 0.0}).hamiltonian();
  const auto traj = integrate_riccati(h, 1.5, 300);
  CHECK(traj.restarts.empty());
  for (std::size_t k = 0; k < traj.times.size(); k += 50) {
    const Complex expected = kI * std::tan(b * traj.times[k] / 2.0);
    CHECK(std::abs(traj.z_samples[k](0, 0) - expected) < 1e-9);
  }
}

TEST_CASE("trajectory agrees with the oracle coordinate") {
  for (std::size_t n : {1, 2}) {
    const auto h = trig_random_hamiltonian(5, n, 30 + n, {.scale = 0.4});
    const auto traj = integrate_riccati(h, 1.0, 400);
    REQUIRE(traj.restarts.empty());
    const auto u = oracle::propagate(h, 1.0, 4000, false).U.back();
    CHECK(distance(traj.z_samples.back(), z_from(u, n)) < 1e-6);
  }
}

TEST_CASE("fourth order in the step") {
  const auto h = trig_random_hamiltonian(3, 1, 5, {.scale = 0.3});
  RiccatiOptions opts;
  opts.estimate_error = false;
  auto end = [&](std::size_t steps) {
    return integrate_riccati(h, TimeGrid::from_zero(1.0, steps), opts).z_samples.back();
  };
  const auto ref = end(1000);
  const double ratio = distance(end(50), ref) / distance(end(100), ref);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("step doubling estimate") {
  const auto h = trig_random_hamiltonian(3, 1, 6, {.scale = 0.3});
  const auto coarse = integrate_riccati(h, 1.0, 40);
  const auto fine = integrate_riccati(h, 1.0, 80);
  CHECK(coarse.est_error > fine.est_error);
  CHECK(coarse.est_error > 0.0);
}

TEST_CASE("restart near the pole") {
  // Precession about x reaches the south pole at t = pi / B.
  const auto h = constant_field({1.0, 0.0, 0.0}).hamiltonian();
  const auto traj = integrate_riccati(h, 4.0, 2000);
  REQUIRE(traj.restarts.size() == 1);
  CHECK(traj.segments.size() == 2);
  CHECK(traj.restarts[0].accumulated.is_unitary(1e-8));
  CHECK(traj.segment_of(0) == 0);
  CHECK(traj.segment_of(traj.times.size() - 1) == 1);
  for (const auto& z : traj.z_samples) CHECK(z.frobenius_norm() < 10.0);
}

TEST_CASE("forced restarts") {
  const auto h = trig_random_hamiltonian(3, 1, 7, {.scale = 0.3});
  RiccatiOptions opts;
  opts.forced_restarts = {100, 250};
  const auto traj = integrate_riccati(h, TimeGrid::from_zero(1.0, 400), opts);
  REQUIRE(traj.restarts.size() == 2);
  CHECK(traj.restarts[0].step_index == 100);
  CHECK(traj.z_samples[100].frobenius_norm() == 0.0);
}

TEST_CASE("stiff field raises StiffnessError") {
  const auto h = constant_field({1000.0, 0.0, 0.0}).hamiltonian();
  try {
    integrate_riccati(h, 1.0, 10);
    FAIL("expected StiffnessError");
  } catch (const StiffnessError& e) {
    CHECK(e.time() == doctest::Approx(0.0));
    CHECK(e.level() == 2);
  }
}

TEST_CASE("options are validated") {
  const auto h = constant_field({1.0, 0.0, 0.0}).hamiltonian();
  RiccatiOptions opts;
  opts.z_max = 0.5;
  CHECK_THROWS_AS(integrate_riccati(h, TimeGrid::from_zero(1.0, 10), opts), ContractViolation);
}

TEST_CASE("hermite interpolation between samples") {
  const double b = 0.9;
  const auto h = constant_field({b, 0.0, 0.0}).hamiltonian();
  const auto traj = integrate_riccati(h, 1.0, 100);
  const auto& seg = traj.segments.front();
  for (double t : {0.105, 0.5005, 0.9871})
    CHECK(std::abs(seg.z_at(t)(0, 0) - kI * std::tan(b * t / 2.0)) < 1e-9);
}

TEST_CASE("so5 four-real form matches the matrix form") {
  const auto f = antisymmetric_from({{5, 4, 0.7}, {2, 1, 0.4}, {4, 1, -0.3}, {5, 3, 0.2}});
  const SO5Coefficients coeffs{[f](double) { return f; }};
  const auto grid = TimeGrid::from_zero(1.0, 400);
  const auto real_form = integrate_so5_riccati(coeffs, grid);
  const auto matrix_form = integrate_riccati(build_so5(coeffs), grid, RiccatiOptions{});
  CHECK(distance(real_form.trajectory.z_samples.back(), matrix_form.z_samples.back()) < 1e-10);
  const SO5State s{0.1, -0.2, 0.3, 0.4};
  const auto back = so5_state_from_matrix(so5_state_matrix(s));
  for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(s[i]));
}
