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

// unitint run <file>... [--out DIR] [--steps N] [--paths LIST]
// unitint verify [--seed S] [--count K] [--max-dim D] [--tolerance T]
//
// Exit codes: 0 all verdicts pass, 1 tolerance failure, 2 parse error, 3 solver error.

#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unitint/errors.hpp"
#include "unitint/scenario.hpp"
#include "unitint/verification.hpp"

namespace {

enum ExitCode { kPass = 0, kToleranceFailure = 1, kParseFailure = 2, kSolverFailure = 3 };

struct ScenarioResult {
  int code = kPass;
  std::string out;
  std::string err;
};

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ScenarioResult run_one(const std::string& file, const unitint::RunOptions& options) {
  ScenarioResult result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    const auto scenario = unitint::load_scenario(file);
    const auto outcome = unitint::run_scenario(scenario, options);
    out << scenario.id << ": " << (outcome.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& v : outcome.verdicts)
      out << "  " << v.name << " measured " << format_value(v.measured) << " tolerance "
          << format_value(v.tolerance) << " " << (v.pass ? "pass" : "FAIL") << "\n";
    for (const auto& path : outcome.written) out << "  wrote " << path.string() << "\n";
    result.code = outcome.pass ? kPass : kToleranceFailure;
  } catch (const unitint::ParseError& e) {
    err << file << ": parse error at " << (e.location().empty() ? "<root>" : e.location())
        << ": " << e.what() << "\n";
    result.code = kParseFailure;
  } catch (const unitint::StiffnessError& e) {
    err << file << ": solver error: " << e.what() << " (t = " << e.time();
    if (e.level() >= 0) err << ", level N = " << e.level();
    err << ")\n";
    result.code = kSolverFailure;
  } catch (const unitint::SingularityError& e) {
    err << file << ": solver error: " << e.what() << " (eigenvalue " << e.eigenvalue() << ")\n";
    result.code = kSolverFailure;
  } catch (const std::exception& e) {
    err << file << ": solver error: " << e.what() << "\n";
    result.code = kSolverFailure;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::vector<unitint::SolverPath> parse_paths(const std::string& list) {
  std::vector<unitint::SolverPath> paths;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto p = unitint::solver_path_from(item);
    if (!p) throw unitint::ParseError("unknown path '" + item + "'", "--paths");
    if (std::find(paths.begin(), paths.end(), *p) == paths.end()) paths.push_back(*p);
  }
  if (paths.empty()) throw unitint::ParseError("empty path list", "--paths");
  return paths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary integration of N-level Schroedinger equations"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string out_dir;
  std::size_t steps = 0;
  std::string paths;
  auto* run = app.add_subcommand("run", "Solve scenario files and write reports");
  run->add_option("files", files, "Scenario JSON files")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: current directory)");
  run->add_option("--steps", steps, "Override the scenario step count")->check(CLI::PositiveNumber);
  run->add_option("--paths", paths, "Comma-separated subset of factorized,hierarchical,bloch,oracle");

  unitint::VerifyOptions verify_opts;
  double tolerance = -1.0;
  auto* verify = app.add_subcommand("verify", "Run the seeded invariant suite");
  verify->add_option("--seed", verify_opts.seed, "First instance seed");
  verify->add_option("--count", verify_opts.count, "Instances per invariant")
      ->check(CLI::PositiveNumber);
  verify->add_option("--max-dim", verify_opts.max_dim, "Largest dimension N")
      ->check(CLI::Range(2, 64));
  verify->add_option("--tolerance", tolerance, "Use one tolerance for every invariant")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParseFailure;
  }

  if (*verify) {
    if (tolerance >= 0.0) verify_opts.tolerance = tolerance;
    const auto report = unitint::run_invariant_suite(verify_opts);
    std::cout << report.table();
    return report.pass() ? kPass : kToleranceFailure;
  }

  unitint::RunOptions options;
  options.out_dir = out_dir.empty() ? std::filesystem::current_path() : std::filesystem::path(out_dir);
  if (steps > 0) options.steps = steps;
  if (!paths.empty()) {
    try {
      options.paths = parse_paths(paths);
    } catch (const unitint::ParseError& e) {
      std::cerr << "parse error at " << e.location() << ": " << e.what() << "\n";
      return kParseFailure;
    }
  }

  // Scenarios are independent; each runs sequentially on its own thread.
  std::vector<std::future<ScenarioResult>> jobs;
  jobs.reserve(files.size());
  for (const auto& file : files)
    jobs.push_back(std::async(files.size() > 1 ? std::launch::async : std::launch::deferred,
                              run_one, file, options));
  int code = kPass;
  for (auto& job : jobs) {
    const auto result = job.get();
    std::cout << result.out;
    std::cerr << result.err;
    code = std::max(code, result.code);
  }
  return code;
}
