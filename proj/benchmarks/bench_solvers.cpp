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

#include "unitint/factorization.hpp"
#include "unitint/oracle.hpp"
#include "unitint/riccati.hpp"

namespace {

void BM_RiccatiOnly(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = unitint::trig_random_hamiltonian(n, 1, 11);
  unitint::RiccatiOptions opts;
  opts.estimate_error = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        unitint::integrate_riccati(h, unitint::TimeGrid::from_zero(1.0, 1000), opts));
}
BENCHMARK(BM_RiccatiOnly)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Hierarchical(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = unitint::trig_random_hamiltonian(n, 1, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        unitint::hierarchical_solve(h, unitint::TimeGrid::from_zero(1.0, 1000)));
}
BENCHMARK(BM_Hierarchical)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Factorized(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = unitint::trig_random_hamiltonian(n, n / 2, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        unitint::factorized_solve(h, unitint::TimeGrid::from_zero(1.0, 1000)));
}
BENCHMARK(BM_Factorized)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = unitint::trig_random_hamiltonian(n, 1, 11);
  for (auto _ : state) benchmark::DoNotOptimize(unitint::oracle::propagate(h, 1.0, 1000, false));
}
BENCHMARK(BM_Oracle)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

}  // namespace
