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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   acceptance            run all
//   acceptance 3 7        run the listed criteria only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unitint/bloch.hpp"
#include "unitint/factorization.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/oracle.hpp"
#include "unitint/riccati.hpp"

namespace {

using namespace unitint;

constexpr Complex kI{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records `label=value` and fails unless value <= limit.
  void bound(const char* label, double value, double limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s=%.2e(<%.0e)", detail.empty() ? "" : " ", label, value,
                  limit);
    detail += buf;
    if (!(value <= limit)) pass = false;
  }
  void range(const char* label, double value, double lo, double hi) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s=%.2f(in [%g,%g])", detail.empty() ? "" : " ", label,
                  value, lo, hi);
    detail += buf;
    if (!(value >= lo && value <= hi)) pass = false;
  }
};

ComplexMatrix random_z(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                       double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double re = normal(rng);
      z(r, c) = scale * Complex(re, normal(rng));
    }
  return z;
}

Real5x5 random_antisymmetric(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Real5x5 f{};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = r + 1; c < 5; ++c) {
      f[r][c] = normal(rng);
      f[c][r] = -f[r][c];
    }
  return f;
}

// ---------------------------------------------------------------------------

Outcome su2_closed_form() {
  Outcome out;
  const auto h = constant_field({1.0, 0.0, 0.0}).hamiltonian();
  const auto path = factorized_solve(h, TimeGrid::from_zero(1.4, 2000));
  double z_err = 0.0;
  double u_err = 0.0;
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    const double t = path.times[k];
    z_err = std::max(z_err, std::abs(path.trajectory.z_samples[k](0, 0) - kI * std::tan(t / 2)));
    const ComplexMatrix exact = std::cos(t / 2) * ComplexMatrix::identity(2) +
                                (kI * std::sin(t / 2)) * pauli::x();
    u_err = std::max(u_err, distance(path.U[k], exact));
  }
  out.bound("z", z_err, 1e-8);
  out.bound("U", u_err, 1e-7);
  return out;
}

struct RandomScenario {
  BlockedHamiltonian h;
  bool hierarchical;
};

std::vector<RandomScenario> oracle_scenarios() {
  std::vector<RandomScenario> all;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t dim = 2 + i % 5;
    const std::uint64_t seed = 1000 + i;
    if ((i / 5) % 2 == 0) {
      std::mt19937_64 rng(seed);
      all.push_back({constant_hamiltonian(random_hermitian_traceless(dim, rng), 1), true});
    } else {
      all.push_back({trig_random_hamiltonian(dim, 1, seed), true});
    }
  }
  for (std::uint64_t i = 0; i < 10; ++i) {
    const std::uint64_t seed = 2000 + i;
    if (i % 2 == 0) {
      std::mt19937_64 rng(seed);
      all.push_back({constant_hamiltonian(random_hermitian_traceless(4, rng), 2), false});
    } else {
      all.push_back({trig_random_hamiltonian(4, 2, seed), false});
    }
  }
  return all;
}

struct OracleRun {
  double worst_distance = 0.0;
  double worst_unitarity = 0.0;
};

const OracleRun& oracle_run() {
  static const OracleRun run = [] {
    OracleRun r;
    const auto grid = TimeGrid::from_zero(1.0, 1000);
    for (const auto& s : oracle_scenarios()) {
      const auto path = s.hierarchical ? hierarchical_solve(s.h, grid).top
                                       : factorized_solve(s.h, grid);
      const auto reference = oracle::propagate(s.h, 1.0, 8000, false).U.back();
      r.worst_distance = std::max(
          r.worst_distance, oracle::compare(path.U.back(), reference).phase_insensitive);
      for (const auto& u : path.U) r.worst_unitarity = std::max(r.worst_unitarity,
                                                                u.unitarity_residual());
    }
    return r;
  }();
  return run;
}

Outcome oracle_equivalence() {
  Outcome out;
  out.bound("distance", oracle_run().worst_distance, 1e-6);
  return out;
}

Outcome unitarity() {
  Outcome out;
  out.bound("residual", oracle_run().worst_unitarity, 1e-8);
  return out;
}

Outcome closure_algebra() {
  Outcome out;
  std::mt19937_64 rng(4);
  double closure = 0.0;
  double roots = 0.0;
  double square = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i) % 5;
    const std::size_t n = 1 + (static_cast<std::size_t>(i) / 5) % (dim / 2);
    const auto z = random_z(rng, dim - n, n);
    const auto c = unitarity_closure(z);
    closure = std::max(closure, (z + c.gamma1 * c.w).frobenius_norm());

    const auto column = random_z(rng, dim - 1, 1);
    const auto gamma = unitarity_closure(column).gamma1;
    const auto closed = gamma1_roots_closed_form(column);
    const auto eig = sqrt_hpd(gamma);
    roots = std::max({roots, distance(closed.sqrt, eig.sqrt),
                      distance(closed.inv_sqrt, eig.inv_sqrt)});
    square = std::max(square, distance(closed.sqrt * closed.sqrt, gamma));
  }
  out.bound("closure", closure, 1e-10);
  out.bound("roots", roots, 1e-12);
  out.bound("square", square, 1e-12);
  return out;
}

Outcome hermiticity_and_traces() {
  Outcome out;
  std::mt19937_64 rng(5);
  double herm = 0.0;
  double trace = 0.0;
  double gamma_rate = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i) % 5;
    const std::size_t n = 1 + (static_cast<std::size_t>(i) / 5) % (dim / 2);

    // Full U1^dagger H U1 - i U1^dagger dU1/dt, derivative by a five-point stencil.
    const auto h = random_hermitian_traceless(dim, rng);
    const auto blocks = split_blocks(h, n);
    const auto z = random_z(rng, dim - n, n, 0.7);
    const auto z_dot = riccati_rhs(blocks, z);
    const double eps = 2e-3 / std::max(1.0, z_dot.frobenius_norm());
    auto u1_at = [&](double s) { return base_factor(z + s * z_dot); };
    const ComplexMatrix u1_dot =
        (u1_at(-2 * eps) - 8.0 * u1_at(-eps) + 8.0 * u1_at(eps) - u1_at(2 * eps)) *
        (1.0 / (12.0 * eps));
    const ComplexMatrix u1 = base_factor(z);
    const ComplexMatrix k = u1.adjoint() * h * u1 - kI * (u1.adjoint() * u1_dot);
    const std::size_t m = dim - n;
    const auto pair = effective_hamiltonian_hermitian(blocks, z, z_dot);
    herm = std::max({herm, k.block(0, m, m, n).frobenius_norm(),
                     k.block(0, 0, m, m).hermiticity_residual(),
                     k.block(m, m, n, n).hermiticity_residual(),
                     distance(k.block(0, 0, m, m), pair.upper),
                     distance(k.block(m, m, n, n), pair.lower)});

    // Trace of the reduced Hamiltonian against the corner bracket.
    const auto b1 = split_blocks(h, 1);
    const auto col = random_z(rng, dim - 1, 1);
    const Complex vz = (b1.coupling.adjoint() * col)(0, 0);
    const Complex expected = -(b1.bottom(0, 0) + 0.5 * (vz + std::conj(vz)));
    trace = std::max(trace, std::abs(recursion_hamiltonian(b1, col).trace() - expected));

    // gamma-dot identity by centered differences of gamma(t) along a Riccati solution.
    TrigRandomOptions trig;
    trig.scale = 0.5;
    const auto ht = trig_random_hamiltonian(dim, 1, 500 + static_cast<std::uint64_t>(i), trig);
    const auto grid = TimeGrid::from_zero(0.5, 2000);
    RiccatiOptions ropts;
    ropts.estimate_error = false;
    const auto traj = integrate_riccati(ht, grid, ropts);
    auto gamma = [&](std::size_t j) {
      const double f = traj.z_samples[j].frobenius_norm();
      return 1.0 + f * f;
    };
    const double step = grid.step();
    for (std::size_t j = 2; j + 2 < traj.times.size(); j += 25) {
      const double fd =
          (gamma(j - 2) - 8.0 * gamma(j - 1) + 8.0 * gamma(j + 1) - gamma(j + 2)) / (12.0 * step);
      const auto bt = blocks_at(ht, traj.times[j]);
      const Complex vzt = (bt.coupling.adjoint() * traj.z_samples[j])(0, 0);
      gamma_rate = std::max(gamma_rate, std::abs(fd - kI * gamma(j) * (vzt - std::conj(vzt))));
    }
  }
  out.bound("hermitian", herm, 1e-9);
  out.bound("trace", trace, 1e-10);
  out.bound("gamma_dot", gamma_rate, 1e-7);
  return out;
}

Outcome phase_decomposition() {
  Outcome out;
  double split = 0.0;
  for (std::size_t dim : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto h = trig_random_hamiltonian(dim, 1, 300 + 10 * dim + seed);
      const auto solution = hierarchical_solve(h, TimeGrid::from_zero(1.0, 1000));
      for (const auto& level : solution.levels)
        for (std::size_t k = 0; k < level.phases.mu_total.size(); ++k)
          split = std::max(split, std::abs(level.phases.geometric[k] + level.phases.dynamical[k] -
                                           level.phases.mu_total[k]));
    }
  }
  out.bound("split", split, 1e-7);

  double closed = 0.0;
  for (double b3 : {1.0, -0.7, 2.5}) {
    const auto path = factorized_solve(constant_field({0.0, 0.0, b3}).hamiltonian(),
                                       TimeGrid::from_zero(1.0, 100));
    for (std::size_t k = 0; k < path.times.size(); ++k)
      closed = std::max({closed, std::abs(path.phases->mu_total[k] + b3 * path.times[k] / 2),
                         std::abs(path.phases->geometric[k])});
  }
  out.bound("B3", closed, 1e-9);

  // exp(Im mu) from an independently propagated U against 1 + |z|^2 from the Riccati path.
  double mu_closure = 0.0;
  const auto field = rotating_field({0.3, -0.2, 1.0}, 0.8, 1.7);
  const auto h = field.hamiltonian();
  const auto grid = TimeGrid::from_zero(2.0, 2000);
  const auto path = factorized_solve(h, grid);
  const auto samples = oracle::propagate_samples(h.evaluator(), TimeGrid::from_zero(2.0, 40000));
  for (std::size_t k = 0; k < path.times.size(); k += 20) {
    const auto& z = path.trajectory.z_samples[k];
    if (path.trajectory.segment_of(k) != 0) break;
    const Complex mu = su2_mu(samples[20 * k]);
    mu_closure = std::max(mu_closure, std::abs(std::exp(mu.imag()) - (1.0 + std::norm(z(0, 0)))));
  }
  out.bound("exp_im_mu", mu_closure, 1e-8);
  return out;
}

Outcome so5_example() {
  Outcome out;
  SO5Coefficients f{[](double) { return antisymmetric_from({{5, 4, 1.0}}); }};
  const auto grid = TimeGrid::from_zero(2.0, 4000);
  const auto so5 = integrate_so5_riccati(f, grid);
  const std::size_t first_restart =
      so5.trajectory.restarts.empty() ? grid.size() : so5.trajectory.restarts.front().step_index;
  double tan_err = 0.0;
  for (std::size_t k = 0; k < first_restart; ++k)
    tan_err = std::max(tan_err, std::abs(so5.samples[k][3] - std::tan(so5.trajectory.times[k])));
  out.bound("z4", tan_err, 1e-8);

  const auto report = bloch::crosscheck_pictures(f, grid);
  double m_err = 0.0;
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    const double t = report.times[k];
    m_err = std::max({m_err, std::abs(report.riccati_path[k][3] + std::sin(2 * t)),
                      std::abs(report.riccati_path[k][4] - std::cos(2 * t))});
  }
  out.bound("m4m5", m_err, 1e-7);

  const auto path = factorized_solve_so5(f, grid);
  const auto reference = oracle::propagate(build_so5(f), 2.0, 8000, false).U.back();
  out.bound("U", oracle::compare(path.U.back(), reference).phase_insensitive, 1e-6);
  const bool restarted = !path.trajectory.restarts.empty() &&
                         path.trajectory.restarts.front().time < std::numbers::pi / 2;
  if (!restarted) out.pass = false;
  out.detail += restarted ? " restart_t=" + std::to_string(path.trajectory.restarts.front().time)
                          : " no-restart";
  return out;
}

Outcome picture_equivalence() {
  Outcome out;
  std::mt19937_64 rng(8);
  double deviation = 0.0;
  double drift = 0.0;
  double rate = 0.0;
  const auto grid = TimeGrid::from_zero(2.0, 4000);
  std::size_t restarts = 0;
  for (int i = 0; i < 20; ++i) {
    const Real5x5 f0 = random_antisymmetric(rng, 1.0);
    const Real5x5 f1 = random_antisymmetric(rng, i % 2 ? 0.8 : 0.0);
    const double omega = 0.5 + static_cast<double>(i) * 0.1;
    SO5Coefficients f{[f0, f1, omega](double t) {
      Real5x5 out = f0;
      for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) out[r][c] += std::sin(omega * t) * f1[r][c];
      return out;
    }};
    const auto report = bloch::crosscheck_pictures(f, grid);
    restarts += report.restarts;
    deviation = std::max(deviation, report.max_deviation);
    double norm = 0.0;
    for (double v : report.linear_path.back()) norm += v * v;
    drift = std::max(drift, std::abs(std::sqrt(norm) - 1.0));
    const double h = grid.step();
    const auto& path = report.riccati_path;
    for (std::size_t k = 2; k + 2 < report.times.size(); ++k) {
      bloch::Vec5 m;
      std::copy(report.riccati_path[k].begin(), report.riccati_path[k].end(), m.begin());
      const auto expected = bloch::bloch5_rhs(f.evaluate(report.times[k]), m);
      for (std::size_t mu = 0; mu < 5; ++mu) {
        const double fd = (path[k - 2][mu] - 8.0 * path[k - 1][mu] + 8.0 * path[k + 1][mu] -
                           path[k + 2][mu]) /
                          (12.0 * h);
        rate = std::max(rate, std::abs(fd - expected[mu]));
      }
    }
  }
  out.bound("deviation", deviation, 1e-6);
  out.bound("norm_drift", drift, 1e-9);
  out.bound("rate", rate, 1e-5);
  out.detail += " restarts=" + std::to_string(restarts);
  return out;
}

Outcome convergence_orders() {
  Outcome out;
  TrigRandomOptions trig;
  trig.scale = 0.3;
  const auto h = trig_random_hamiltonian(3, 1, 77, trig);
  RiccatiOptions ropts;
  ropts.estimate_error = false;
  std::size_t restarts = 0;
  auto z_end = [&](std::size_t steps) {
    const auto traj = integrate_riccati(h, TimeGrid::from_zero(1.0, steps), ropts);
    restarts += traj.restarts.size();
    return traj.z_samples.back();
  };
  const auto z_ref = z_end(800);
  const double e40 = distance(z_end(40), z_ref);
  const double e80 = distance(z_end(80), z_ref);
  out.range("riccati_ratio", e40 / e80, 8.0, 32.0);
  out.detail += " restarts=" + std::to_string(restarts);
  if (restarts != 0) out.pass = false;

  auto u_end = [&](std::size_t steps) { return oracle::propagate(h, 1.0, steps, false).U.back(); };
  const auto u_ref = u_end(2000);
  const double o100 = distance(u_end(100), u_ref);
  const double o200 = distance(u_end(200), u_ref);
  out.range("oracle_ratio", o100 / o200, 2.0, 8.0);
  return out;
}

Outcome restart_exactness() {
  Outcome out;
  // Tilted precession: the state approaches the south pole without reaching it.
  const auto h = constant_field({1.0, 0.0, 0.12}).hamiltonian();
  const auto grid = TimeGrid::from_zero(4.0, 4000);
  RiccatiOptions plain;
  plain.z_max = 1e6;
  const auto smooth = factorized_solve(h, grid, plain);
  double z_peak = 0.0;
  for (const auto& z : smooth.trajectory.z_samples) z_peak = std::max(z_peak, z.frobenius_norm());

  RiccatiOptions forced = plain;
  forced.forced_restarts = {1000, 2500, 3100, 3500};
  const auto restarted = factorized_solve(h, grid, forced);
  out.bound("endpoint", distance(smooth.U.back(), restarted.U.back()), 1e-7);
  out.detail += " restarts=" + std::to_string(restarted.trajectory.restarts.size()) +
                " z_peak=" + std::to_string(z_peak);
  if (!smooth.trajectory.restarts.empty() || restarted.trajectory.restarts.size() != 4)
    out.pass = false;
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "su2_closed_form", su2_closed_form},
      {2, "oracle_equivalence", oracle_equivalence},
      {3, "unitarity", unitarity},
      {4, "closure_algebra", closure_algebra},
      {5, "hermiticity_and_traces", hermiticity_and_traces},
      {6, "phase_decomposition", phase_decomposition},
      {7, "so5_example", so5_example},
      {8, "picture_equivalence", picture_equivalence},
      {9, "convergence_orders", convergence_orders},
      {10, "restart_exactness", restart_exactness},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-24s %s  %s  [%.2fs]\n", c.id, c.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
