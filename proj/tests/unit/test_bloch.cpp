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
#include "unitint/bloch.hpp"
#include "unitint/errors.hpp"
#include "unitint/oracle.hpp"

using namespace unitint;

namespace {
constexpr Complex kI{0.0, 1.0};
}

TEST_CASE("stereographic maps") {
  SUBCASE("origin is the north pole") {
    const auto m = bloch::project2(0.0);
    CHECK(m[2] == 1.0);
    const auto m5 = bloch::project5({0.0, 0.0, 0.0, 0.0});
    CHECK(m5[4] == 1.0);
  }
  SUBCASE("round trips") {
    const Complex z(0.3, -1.2);
    CHECK(std::abs(bloch::unproject2(bloch::project2(z)) - z) < 1e-14);
    const SO5State s{0.2, -0.7, 1.1, 0.05};
    const auto back = bloch::unproject5(bloch::project5(s));
    for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(s[i]));
  }
  SUBCASE("unit norm") {
    const auto m = bloch::project5({0.4, 0.1, -2.0, 0.9});
    double norm = 0.0;
    for (double v : m) norm += v * v;
    CHECK(norm == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(bloch::unproject2({0.0, 0.0, -1.0}), ContractViolation);
  CHECK_THROWS_AS(bloch::unproject5({0.0, 0.0, 0.0, 0.0, -1.0}), ContractViolation);
}

TEST_CASE("precession right-hand sides") {
  const auto r = bloch::bloch3_rhs({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(-1.0));
  const auto f = antisymmetric_from({{5, 4, 1.0}});
  const auto r5 = bloch::bloch5_rhs(f, {0.0, 0.0, 0.0, 1.0, 0.0});
  CHECK(r5[4] == doctest::Approx(2.0 * f[4][3]));
}

TEST_CASE("evolution reads the same vector as the riccati map") {
  const auto h = constant_field({0.4, -0.3, 0.8}).hamiltonian();
  const auto u = oracle::propagate(h, 0.7, 2000, false).U.back();
  const Complex z = u(0, 1) / u(1, 1);
  const auto a = bloch::bloch3_from_evolution(u);
  const auto b = bloch::project2(z);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  CHECK_THROWS_AS(bloch::bloch3_from_evolution(ComplexMatrix::identity(3)), ContractViolation);
}

TEST_CASE("measured precession constant is one") {
  const auto field = rotating_field({0.2, 0.0, 0.7}, 0.5, 1.3);
  const auto report = bloch::crosscheck_pictures(field, TimeGrid::from_zero(2.0, 2000));
  CHECK(report.dimension == 3);
  CHECK(report.kappa == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(report.max_deviation < 1e-6);
  CHECK(report.max_norm_drift < 1e-9);
}

TEST_CASE("so5 linear and riccati pictures agree") {
  const auto f0 = antisymmetric_from({{5, 4, 1.0}, {3, 1, 0.4}, {5, 2, -0.6}});
  const SO5Coefficients coeffs{[f0](double t) {
    Real5x5 f = f0;
    f[1][0] = 0.3 * std::sin(t);
    f[0][1] = -f[1][0];
    return f;
  }};
  const auto report = bloch::crosscheck_pictures(coeffs, TimeGrid::from_zero(2.0, 2000));
  CHECK(report.dimension == 5);
  CHECK(report.max_deviation < 1e-6);
  CHECK(report.max_norm_drift < 1e-9);
}

TEST_CASE("non-antisymmetric coefficients are rejected") {
  Real5x5 bad{};
  bad[4][3] = 1.0;
  const SO5Coefficients coeffs{[bad](double) { return bad; }};
  CHECK_THROWS_AS(bloch::crosscheck_pictures(coeffs, TimeGrid::from_zero(1.0, 10)), ModelError);
}
