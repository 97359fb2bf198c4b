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

#include <benchmark/benchmark.h>

#include <random>

#include "unitint/factorization.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/linalg.hpp"

namespace {

using unitint::ComplexMatrix;

ComplexMatrix random_h(std::size_t n) {
  std::mt19937_64 rng(7);
  return unitint::random_hermitian_traceless(n, rng);
}

void BM_Expm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_h(n) * unitint::Complex(0.0, -0.01);
  for (auto _ : state) benchmark::DoNotOptimize(unitint::expm(a));
}
BENCHMARK(BM_Expm)->DenseRange(2, 6, 2);

void BM_HermitianEigen(benchmark::State& state) {
  const auto h = random_h(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unitint::hermitian_eigendecomposition(h));
}
BENCHMARK(BM_HermitianEigen)->DenseRange(2, 6, 2);

void BM_BaseFactor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexMatrix z(n - 1, 1);
  for (std::size_t i = 0; i + 1 < n; ++i) z(i, 0) = {0.3 * static_cast<double>(i), 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(unitint::base_factor(z));
}
BENCHMARK(BM_BaseFactor)->DenseRange(2, 6, 2);

}  // namespace
