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

#include "unitint/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "unitint/bloch.hpp"
#include "unitint/factorization.hpp"
#include "unitint/oracle.hpp"

namespace unitint {

using nlohmann::json;

namespace {

constexpr std::string_view kFamilyNames[] = {"constant", "spin_half", "so5", "trig_random",
                                              "piecewise"};
constexpr std::string_view kPathNames[] = {"factorized", "hierarchical", "bloch", "oracle"};

std::string child(const std::string& at, std::string_view key) {
  return at + "/" + std::string(key);
}
std::string child(const std::string& at, std::size_t index) {
  return at + "/" + std::to_string(index);
}

const json& require(const json& obj, std::string_view key, const std::string& at) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) throw ParseError("missing required field", child(at, key));
  return *it;
}

double as_real(const json& v, const std::string& at) {
  if (!v.is_number()) throw ParseError("expected a number", at);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("expected a finite number", at);
  return x;
}

std::size_t as_count(const json& v, const std::string& at) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ParseError("expected a non-negative integer", at);
  return v.get<std::size_t>();
}

Complex as_complex(const json& v, const std::string& at) {
  if (v.is_number()) return {as_real(v, at), 0.0};
  if (!v.is_array() || v.size() != 2) throw ParseError("expected an [re, im] pair", at);
  return {as_real(v[0], child(at, 0)), as_real(v[1], child(at, 1))};
}

ComplexMatrix as_matrix(const json& v, std::size_t dim, const std::string& at) {
  if (!v.is_array() || v.size() != dim)
    throw ParseError("expected " + std::to_string(dim) + " rows", at);
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto row_at = child(at, r);
    if (!v[r].is_array() || v[r].size() != dim)
      throw ParseError("expected " + std::to_string(dim) + " entries", row_at);
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = as_complex(v[r][c], child(row_at, c));
  }
  return m;
}

Vec3 as_vec3(const json& v, const std::string& at) {
  if (!v.is_array() || v.size() != 3) throw ParseError("expected three components", at);
  return {as_real(v[0], child(at, 0)), as_real(v[1], child(at, 1)), as_real(v[2], child(at, 2))};
}

// Either a full 5x5 array or a sparse map {"54": 1.0} of one-based index pairs.
Real5x5 as_so5(const json& v, const std::string& at) {
  Real5x5 f{};
  if (v.is_array()) {
    if (v.size() != 5) throw ParseError("expected 5 rows", at);
    for (std::size_t r = 0; r < 5; ++r) {
      const auto row_at = child(at, r);
      if (!v[r].is_array() || v[r].size() != 5) throw ParseError("expected 5 entries", row_at);
      for (std::size_t c = 0; c < 5; ++c) f[r][c] = as_real(v[r][c], child(row_at, c));
    }
  } else if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      const auto entry_at = child(at, key);
      if (key.size() != 2 || key[0] < '1' || key[0] > '5' || key[1] < '1' || key[1] > '5' ||
          key[0] == key[1])
        throw ParseError("expected a key of two distinct digits 1..5", entry_at);
      const std::size_t mu = static_cast<std::size_t>(key[0] - '1');
      const std::size_t nu = static_cast<std::size_t>(key[1] - '1');
      const double x = as_real(value, entry_at);
      f[mu][nu] = x;
      f[nu][mu] = -x;
    }
  } else {
    throw ParseError("expected a 5x5 array or an index map", at);
  }
  if (!is_antisymmetric(f)) throw ParseError("coefficients are not antisymmetric", at);
  return f;
}

void expect_shape(Scenario& s, const json& root, std::size_t dimension, std::size_t block_size) {
  if (root.contains("N") && s.dimension != dimension)
    throw ParseError("family requires N = " + std::to_string(dimension), "/N");
  if (root.contains("n") && s.block_size != block_size)
    throw ParseError("family requires n = " + std::to_string(block_size), "/n");
  s.dimension = dimension;
  s.block_size = block_size;
}

void parse_family(Scenario& s, const json& root) {
  switch (s.family) {
    case Family::kConstant:
      s.constant_h = as_matrix(require(root, "H", ""), s.dimension, "/H");
      break;
    case Family::kSpinHalf: {
      expect_shape(s, root, 2, 1);
      s.field = as_vec3(require(root, "B", ""), "/B");
      if (auto it = root.find("rotating"); it != root.end()) {
        s.rotating_amplitude = as_real(require(*it, "amplitude", "/rotating"), "/rotating/amplitude");
        s.rotating_omega = as_real(require(*it, "omega", "/rotating"), "/rotating/omega");
      }
      break;
    }
    case Family::kSO5: {
      expect_shape(s, root, 4, 2);
      s.so5_static = as_so5(require(root, "F", ""), "/F");
      if (auto it = root.find("F_sin"); it != root.end()) {
        s.so5_sine = as_so5(*it, "/F_sin");
        s.so5_omega = as_real(require(root, "omega", ""), "/omega");
      }
      break;
    }
    case Family::kTrigRandom:
      if (auto it = root.find("harmonics"); it != root.end())
        s.trig.harmonics = as_count(*it, "/harmonics");
      if (auto it = root.find("omega"); it != root.end()) s.trig.omega = as_real(*it, "/omega");
      if (auto it = root.find("scale"); it != root.end()) s.trig.scale = as_real(*it, "/scale");
      break;
    case Family::kPiecewise: {
      const auto& breaks = require(root, "breaks", "");
      if (!breaks.is_array()) throw ParseError("expected an array", "/breaks");
      for (std::size_t i = 0; i < breaks.size(); ++i)
        s.breaks.push_back(as_real(breaks[i], child("/breaks", i)));
      for (std::size_t i = 1; i < s.breaks.size(); ++i)
        if (!(s.breaks[i] > s.breaks[i - 1]))
          throw ParseError("breaks must be strictly increasing", child("/breaks", i));
      const auto& pieces = require(root, "H_pieces", "");
      if (!pieces.is_array() || pieces.size() != s.breaks.size() + 1)
        throw ParseError("expected one more piece than breaks", "/H_pieces");
      for (std::size_t i = 0; i < pieces.size(); ++i)
        s.pieces.push_back(as_matrix(pieces[i], s.dimension, child("/H_pieces", i)));
      break;
    }
  }
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json restart_json(const RiccatiTrajectory& traj) {
  json log = json::array();
  for (const auto& r : traj.restarts) log.push_back({{"time", r.time}, {"step", r.step_index}});
  return log;
}

json phase_json(std::size_t dimension, const PhaseSeries& p) {
  return {{"level", dimension},
          {"mu_total", p.mu_total.back()},
          {"geometric", p.geometric.back()},
          {"dynamical", p.dynamical.back()}};
}

double max_unitarity(const std::vector<ComplexMatrix>& samples) {
  double worst = 0.0;
  for (const auto& u : samples) worst = std::max(worst, u.unitarity_residual());
  return worst;
}

double max_phase_split(const PhaseSeries& p) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.mu_total.size(); ++k)
    worst = std::max(worst, std::abs(p.geometric[k] + p.dynamical[k] - p.mu_total[k]));
  return worst;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
  if (!out) throw Error("failed writing " + file.string());
}

}  // namespace

std::string_view to_string(Family family) { return kFamilyNames[static_cast<int>(family)]; }
std::string_view to_string(SolverPath path) { return kPathNames[static_cast<int>(path)]; }

std::optional<SolverPath> solver_path_from(std::string_view name) {
  for (int i = 0; i < 4; ++i)
    if (kPathNames[i] == name) return static_cast<SolverPath>(i);
  return std::nullopt;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults{
      {"unitarity", 1e-8}, {"distance", 1e-6}, {"bloch_deviation", 1e-6}, {"phase_split", 1e-7}};
  return defaults;
}

BlockedHamiltonian Scenario::hamiltonian() const {
  switch (family) {
    case Family::kConstant:
      return constant_hamiltonian(*constant_h, block_size);
    case Family::kSpinHalf:
      return spin_field().hamiltonian();
    case Family::kSO5:
      return build_so5(so5_coefficients());
    case Family::kTrigRandom:
      return trig_random_hamiltonian(dimension, block_size, seed, trig);
    case Family::kPiecewise:
      return piecewise_hamiltonian(breaks, pieces, block_size);
  }
  throw ContractViolation("unknown family");
}

SpinHalfField Scenario::spin_field() const {
  if (family != Family::kSpinHalf) throw ContractViolation("scenario is not spin_half");
  return rotating_field(field, rotating_amplitude, rotating_omega);
}

SO5Coefficients Scenario::so5_coefficients() const {
  if (family != Family::kSO5) throw ContractViolation("scenario is not so5");
  const Real5x5 f0 = so5_static;
  const Real5x5 f1 = so5_sine;
  const double omega = so5_omega;
  return {[f0, f1, omega](double t) {
    Real5x5 f = f0;
    const double s = std::sin(omega * t);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) f[r][c] += s * f1[r][c];
    return f;
  }};
}

bool Scenario::has_path(SolverPath p) const {
  return std::find(paths.begin(), paths.end(), p) != paths.end();
}

void Scenario::validate() const {
  if (dimension < 2) throw ParseError("N must be at least 2", "/N");
  if (block_size < 1 || 2 * block_size > dimension)
    throw ParseError("n must satisfy 1 <= n <= N/2", "/n");
  if (!(t_end > 0.0)) throw ParseError("t_end must be positive", "/t_end");
  if (steps < 1) throw ParseError("steps must be at least 1", "/steps");
  if (!(z_max > 0.0)) throw ParseError("z_max must be positive", "/z_max");
  if (paths.empty()) throw ParseError("at least one path is required", "/paths");
  if (family == Family::kConstant && (!constant_h || constant_h->rows() != dimension))
    throw ParseError("constant family needs an N x N matrix", "/H");
  if (has_path(SolverPath::kHierarchical) && block_size != 1)
    throw ParseError("hierarchical path requires n = 1", "/paths");
  if (has_path(SolverPath::kBloch) && family != Family::kSpinHalf && family != Family::kSO5)
    throw ParseError("bloch path requires a spin_half or so5 family", "/paths");

  std::size_t unitary_paths = 0;
  for (auto p : {SolverPath::kFactorized, SolverPath::kHierarchical, SolverPath::kOracle})
    unitary_paths += has_path(p) ? 1 : 0;
  const bool riccati = has_path(SolverPath::kFactorized) || has_path(SolverPath::kHierarchical);
  for (const auto& [name, value] : tolerances) {
    const auto at = "/tolerances/" + name;
    if (!(value >= 0.0)) throw ParseError("tolerance must be non-negative", at);
    if (name == "unitarity" && unitary_paths == 0)
      throw ParseError("no requested path produces an evolution operator", at);
    if (name == "distance" && unitary_paths < 2)
      throw ParseError("needs at least two evolution-producing paths", at);
    if (name == "bloch_deviation" && !has_path(SolverPath::kBloch))
      throw ParseError("needs the bloch path", at);
    if (name == "phase_split" && !(riccati && block_size == 1))
      throw ParseError("needs a factorized or hierarchical path with n = 1", at);
  }
}

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!root.is_object()) throw ParseError("expected a JSON object", "");

  static const std::vector<std::string> known{
      "id",    "N",      "n",          "family",   "t_end",       "steps",     "oracle_steps",
      "z_max", "paths",  "seed",       "tolerances", "H",         "B",         "rotating",
      "F",     "F_sin",  "omega",      "harmonics", "scale",      "breaks",    "H_pieces"};
  for (const auto& [key, value] : root.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown field", "/" + key);

  Scenario s;
  if (auto it = root.find("id"); it != root.end()) {
    if (!it->is_string() || it->get<std::string>().empty())
      throw ParseError("expected a non-empty string", "/id");
    s.id = it->get<std::string>();
    if (s.id.find_first_of("/\\") != std::string::npos)
      throw ParseError("id must not contain path separators", "/id");
  }

  const auto& family = require(root, "family", "");
  if (!family.is_string()) throw ParseError("expected a string", "/family");
  const auto name = family.get<std::string>();
  const auto fit = std::find(std::begin(kFamilyNames), std::end(kFamilyNames), name);
  if (fit == std::end(kFamilyNames)) throw ParseError("unknown family '" + name + "'", "/family");
  s.family = static_cast<Family>(fit - std::begin(kFamilyNames));

  if (auto it = root.find("N"); it != root.end()) s.dimension = as_count(*it, "/N");
  else if (s.family != Family::kSpinHalf && s.family != Family::kSO5)
    throw ParseError("missing required field", "/N");
  if (auto it = root.find("n"); it != root.end()) s.block_size = as_count(*it, "/n");
  if (s.dimension < 2) throw ParseError("N must be at least 2", "/N");

  s.t_end = as_real(require(root, "t_end", ""), "/t_end");
  s.steps = as_count(require(root, "steps", ""), "/steps");
  if (auto it = root.find("oracle_steps"); it != root.end())
    s.oracle_steps = as_count(*it, "/oracle_steps");
  if (auto it = root.find("z_max"); it != root.end()) s.z_max = as_real(*it, "/z_max");
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) throw ParseError("expected a non-negative integer", "/seed");
    s.seed = it->get<std::uint64_t>();
  } else if (s.family == Family::kTrigRandom) {
    throw ParseError("random family needs a seed", "/seed");
  }

  if (auto it = root.find("paths"); it != root.end()) {
    if (!it->is_array()) throw ParseError("expected an array", "/paths");
    s.paths.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& p = (*it)[i];
      const auto parsed = p.is_string() ? solver_path_from(p.get<std::string>()) : std::nullopt;
      if (!parsed) throw ParseError("unknown path", child("/paths", i));
      if (!s.has_path(*parsed)) s.paths.push_back(*parsed);
    }
  }

  if (auto it = root.find("tolerances"); it != root.end()) {
    if (!it->is_object()) throw ParseError("expected an object", "/tolerances");
    for (const auto& [key, value] : it->items()) {
      const auto at = "/tolerances/" + key;
      if (!default_tolerances().count(key)) throw ParseError("unknown tolerance", at);
      s.tolerances[key] = as_real(value, at);
    }
  }

  parse_family(s, root);
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file", file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

RunOutcome run_scenario(Scenario s, const RunOptions& options) {
  if (options.steps) s.steps = *options.steps;
  if (options.paths) s.paths = *options.paths;
  s.validate();

  const auto h = s.hamiltonian();
  const auto grid = TimeGrid::from_zero(s.t_end, s.steps);
  RiccatiOptions ropts;
  ropts.z_max = s.z_max;

  json report;
  report["id"] = s.id;
  report["N"] = s.dimension;
  report["n"] = s.block_size;
  report["family"] = to_string(s.family);
  report["t_end"] = s.t_end;
  report["steps"] = s.steps;
  report["z_max"] = s.z_max;
  json path_reports = json::object();
  json phase_table = json::array();

  std::vector<std::pair<std::string, ComplexMatrix>> endpoints;
  double unitarity = 0.0;
  double phase_split = 0.0;
  const EvolutionPath* primary = nullptr;

  std::optional<EvolutionPath> factorized;
  if (s.has_path(SolverPath::kFactorized)) {
    factorized = s.family == Family::kSO5 ? factorized_solve_so5(s.so5_coefficients(), grid, ropts)
                                          : factorized_solve(h, grid, ropts);
    const double residual = max_unitarity(factorized->U);
    unitarity = std::max(unitarity, residual);
    endpoints.emplace_back("factorized", factorized->U.back());
    path_reports["factorized"] = {{"U", matrix_json(factorized->U.back())},
                                  {"unitarity_residual", residual},
                                  {"riccati_est_error", factorized->trajectory.est_error},
                                  {"restarts", restart_json(factorized->trajectory)}};
    if (factorized->phases) {
      phase_split = std::max(phase_split, max_phase_split(*factorized->phases));
      auto row = phase_json(s.dimension, *factorized->phases);
      row["path"] = "factorized";
      phase_table.push_back(std::move(row));
    }
    primary = &*factorized;
  }

  std::optional<HierarchicalSolution> hierarchical;
  if (s.has_path(SolverPath::kHierarchical)) {
    hierarchical = hierarchical_solve(h, grid, ropts);
    const auto& top = hierarchical->top;
    const double residual = max_unitarity(top.U);
    unitarity = std::max(unitarity, residual);
    endpoints.emplace_back("hierarchical", top.U.back());
    path_reports["hierarchical"] = {{"U", matrix_json(top.U.back())},
                                    {"unitarity_residual", residual},
                                    {"riccati_est_error", top.trajectory.est_error},
                                    {"restarts", restart_json(top.trajectory)}};
    for (const auto& level : hierarchical->levels) {
      phase_split = std::max(phase_split, max_phase_split(level.phases));
      auto row = phase_json(level.dimension, level.phases);
      row["path"] = "hierarchical";
      phase_table.push_back(std::move(row));
    }
    primary = &top;
  }

  if (s.has_path(SolverPath::kOracle)) {
    const auto result = oracle::propagate(h, s.t_end, s.effective_oracle_steps(), false);
    const double residual = max_unitarity(result.U);
    unitarity = std::max(unitarity, residual);
    endpoints.emplace_back("oracle", result.U.back());
    path_reports["oracle"] = {{"U", matrix_json(result.U.back())},
                              {"unitarity_residual", residual},
                              {"steps", s.effective_oracle_steps()}};
  }

  std::optional<bloch::PictureReport> pictures;
  if (s.has_path(SolverPath::kBloch)) {
    pictures = s.family == Family::kSO5
                   ? bloch::crosscheck_pictures(s.so5_coefficients(), grid, ropts)
                   : bloch::crosscheck_pictures(s.spin_field(), grid, ropts);
    path_reports["bloch"] = {{"dimension", pictures->dimension},
                             {"max_deviation", pictures->max_deviation},
                             {"max_norm_drift", pictures->max_norm_drift},
                             {"rate_factor", pictures->kappa},
                             {"restarts", pictures->restarts},
                             {"m_end", pictures->riccati_path.back()}};
  }

  json distances = json::array();
  double worst_distance = 0.0;
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < endpoints.size(); ++j) {
      const auto d = oracle::compare(endpoints[i].second, endpoints[j].second);
      worst_distance = std::max(worst_distance, d.phase_insensitive);
      distances.push_back({{"a", endpoints[i].first},
                           {"b", endpoints[j].first},
                           {"plain", d.plain},
                           {"phase_insensitive", d.phase_insensitive}});
    }

  // Verdicts: defaults for every applicable check, overridden by the scenario's values.
  RunOutcome outcome;
  std::map<std::string, double> measured;
  if (!endpoints.empty()) measured["unitarity"] = unitarity;
  if (endpoints.size() >= 2) measured["distance"] = worst_distance;
  if (pictures) measured["bloch_deviation"] = pictures->max_deviation;
  if (primary && s.block_size == 1) measured["phase_split"] = phase_split;

  json verdicts = json::array();
  outcome.pass = true;
  for (const auto& [name, value] : measured) {
    auto it = s.tolerances.find(name);
    const double tol = it != s.tolerances.end() ? it->second : default_tolerances().at(name);
    Verdict v{name, tol, value, value <= tol};
    outcome.pass = outcome.pass && v.pass;
    verdicts.push_back(
        {{"name", name}, {"tolerance", tol}, {"measured", value}, {"pass", v.pass}});
    outcome.verdicts.push_back(std::move(v));
  }

  report["paths"] = std::move(path_reports);
  report["distances"] = std::move(distances);
  report["phases"] = std::move(phase_table);
  report["verdicts"] = std::move(verdicts);
  report["pass"] = outcome.pass;
  outcome.report_json = report.dump(2) + "\n";

  // Trajectory CSV from the outermost Riccati solution, when there is one.
  std::ostringstream csv;
  std::vector<std::string> header{"t"};
  const std::vector<double>& times = primary ? primary->times
                                     : pictures ? pictures->times
                                                : std::vector<double>{0.0, s.t_end};
  if (primary) {
    const auto& z0 = primary->trajectory.z_samples.front();
    for (std::size_t r = 0; r < z0.rows(); ++r)
      for (std::size_t c = 0; c < z0.cols(); ++c) {
        const auto base = "z_" + std::to_string(r) + "_" + std::to_string(c);
        header.push_back(base + "_re");
        header.push_back(base + "_im");
      }
  }
  if (pictures)
    for (std::size_t i = 0; i < pictures->dimension; ++i)
      header.push_back("m" + std::to_string(i + 1));
  const PhaseSeries* phases = primary && primary->phases ? &*primary->phases : nullptr;
  if (hierarchical) phases = &hierarchical->levels.front().phases;
  if (phases) {
    header.push_back("mu_total");
    header.push_back("phase_geometric");
    header.push_back("phase_dynamical");
  }
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << "\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    csv << format_real(times[k]);
    if (primary) {
      const auto& z = primary->trajectory.z_samples[k];
      for (const auto& e : z.entries())
        csv << "," << format_real(e.real()) << "," << format_real(e.imag());
    }
    if (pictures)
      for (double m : pictures->riccati_path[k]) csv << "," << format_real(m);
    if (phases)
      csv << "," << format_real(phases->mu_total[k]) << "," << format_real(phases->geometric[k])
          << "," << format_real(phases->dynamical[k]);
    csv << "\n";
  }
  outcome.trajectory_csv = csv.str();

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    const auto csv_file = *options.out_dir / (s.id + "_trajectory.csv");
    const auto json_file = *options.out_dir / (s.id + "_report.json");
    write_file(csv_file, outcome.trajectory_csv);
    write_file(json_file, outcome.report_json);
    outcome.written = {csv_file, json_file};
  }
  return outcome;
}

}  // namespace unitint
