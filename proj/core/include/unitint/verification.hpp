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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Seeded property suite over random instances. Instance i uses seed + i.

namespace unitint {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t count = 50;
  std::size_t max_dim = 6;
  /// Replaces every invariant's tolerance when set.
  std::optional<double> tolerance;
};

struct InvariantSummary {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t instances = 0;
  std::vector<std::uint64_t> failing_seeds;

  bool pass() const { return failing_seeds.empty(); }
};

struct VerifyReport {
  std::vector<InvariantSummary> invariants;

  bool pass() const;
  /// Fixed-width table of worst residuals followed by failing seeds; deterministic.
  std::string table() const;
};

/// Names in table order.
const std::vector<std::string>& invariant_names();

/// Runs every invariant on `count` instances with dimensions 2..max_dim.
/// Throws ContractViolation when max_dim < 2 or count == 0.
VerifyReport run_invariant_suite(const VerifyOptions& options = {});

}  // namespace unitint
