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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unitint/errors.hpp"
#include "unitint/hamiltonian.hpp"

namespace unitint {

/// Scenario file that does not match the schema. location() is a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string location)
      : Error(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

enum class Family { kConstant, kSpinHalf, kSO5, kTrigRandom, kPiecewise };
enum class SolverPath { kFactorized, kHierarchical, kBloch, kOracle };

std::string_view to_string(Family family);
std::string_view to_string(SolverPath path);
/// Parses "factorized", "hierarchical", "bloch", "oracle"; std::nullopt otherwise.
std::optional<SolverPath> solver_path_from(std::string_view name);

/// One runnable problem: a Hamiltonian family, a grid, the solver paths to compare and
/// the tolerances their verdicts use.
struct Scenario {
  std::string id = "scenario";
  std::size_t dimension = 2;
  std::size_t block_size = 1;
  Family family = Family::kConstant;

  // Family parameters; only the ones for `family` are meaningful.
  std::optional<ComplexMatrix> constant_h;
  Vec3 field{};
  double rotating_amplitude = 0.0;
  double rotating_omega = 0.0;
  Real5x5 so5_static{};
  Real5x5 so5_sine{};
  double so5_omega = 0.0;
  TrigRandomOptions trig;
  std::vector<double> breaks;
  std::vector<ComplexMatrix> pieces;

  double t_end = 1.0;
  std::size_t steps = 1000;
  std::size_t oracle_steps = 0;  // 0: 4 * steps
  double z_max = 10.0;
  std::vector<SolverPath> paths{SolverPath::kFactorized, SolverPath::kOracle};
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;

  BlockedHamiltonian hamiltonian() const;
  SpinHalfField spin_field() const;
  SO5Coefficients so5_coefficients() const;
  bool has_path(SolverPath p) const;
  std::size_t effective_oracle_steps() const { return oracle_steps ? oracle_steps : 4 * steps; }

  /// Throws ParseError when the combination is not runnable (e.g. bloch on a constant family).
  void validate() const;
};

/// Tolerance names a scenario may set, with their defaults.
const std::map<std::string, double>& default_tolerances();

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& file);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> steps;
  std::optional<std::vector<SolverPath>> paths;
};

struct Verdict {
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct RunOutcome {
  bool pass = false;
  std::vector<Verdict> verdicts;
  std::string report_json;
  std::string trajectory_csv;
  std::vector<std::filesystem::path> written;
};

/// Runs every requested path, writes <id>_trajectory.csv and <id>_report.json when out_dir
/// is set. Solver failures propagate as exceptions (StiffnessError, SingularityError, ...).
RunOutcome run_scenario(Scenario scenario, const RunOptions& options = {});

}  // namespace unitint
