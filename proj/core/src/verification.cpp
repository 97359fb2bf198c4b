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

#include "unitint/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "unitint/bloch.hpp"
#include "unitint/errors.hpp"
#include "unitint/factorization.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/riccati.hpp"

namespace unitint {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Instance {
  std::uint64_t seed;
  std::size_t max_dim;
  std::mt19937_64 rng;

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
  ComplexMatrix random_z(std::size_t rows, std::size_t cols, double scale = 1.0) {
    ComplexMatrix z(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const double re = normal();
        z(r, c) = scale * Complex(re, normal());
      }
    return z;
  }
  std::size_t dimension() { return pick(2, max_dim); }
};

using Check = std::function<double(Instance&)>;

double closure_residual(Instance& in) {
  const std::size_t dim = in.dimension();
  const std::size_t n = in.pick(1, dim / 2);
  const auto z = in.random_z(dim - n, n);
  const auto c = unitarity_closure(z);
  return (z + c.gamma1 * c.w).frobenius_norm();
}

double closed_form_roots(Instance& in) {
  const auto z = in.random_z(in.dimension() - 1, 1);
  const auto gamma1 = unitarity_closure(z).gamma1;
  const auto closed = gamma1_roots_closed_form(z);
  const auto eig = sqrt_hpd(gamma1);
  return std::max({distance(closed.sqrt, eig.sqrt), distance(closed.inv_sqrt, eig.inv_sqrt),
                   distance(closed.sqrt * closed.sqrt, gamma1)});
}

// U1^dagger H U1 - i U1^dagger dU1/dt with dU1/dt from a five-point stencil along z_dot;
// its off-diagonal blocks must vanish and its diagonal blocks must be Hermitian and equal
// the closed-form blocks.
double effective_blocks(Instance& in) {
  const std::size_t dim = in.dimension();
  const std::size_t n = in.pick(1, dim / 2);
  const auto h = random_hermitian_traceless(dim, in.rng);
  const auto blocks = split_blocks(h, n);
  const auto z = in.random_z(dim - n, n, 0.7);
  const auto z_dot = riccati_rhs(blocks, z);

  // Step of 2e-3 in z, whatever the size of z_dot.
  const double eps = 2e-3 / std::max(1.0, z_dot.frobenius_norm());
  auto at = [&](double s) { return base_factor(z + s * z_dot); };
  const ComplexMatrix u1_dot =
      (at(-2 * eps) - 8.0 * at(-eps) + 8.0 * at(eps) - at(2 * eps)) * (1.0 / (12.0 * eps));
  const ComplexMatrix u1 = base_factor(z);
  const ComplexMatrix k = u1.adjoint() * h * u1 - kI * (u1.adjoint() * u1_dot);

  const std::size_t m = dim - n;
  const auto upper = k.block(0, 0, m, m);
  const auto lower = k.block(m, m, n, n);
  const auto pair = effective_hamiltonian_hermitian(blocks, z, z_dot);
  return std::max({k.block(0, m, m, n).frobenius_norm(), k.block(m, 0, n, m).frobenius_norm(),
                   upper.hermiticity_residual(), lower.hermiticity_residual(),
                   distance(upper, pair.upper), distance(lower, pair.lower)});
}

double trace_identity(Instance& in) {
  const std::size_t dim = std::max<std::size_t>(in.dimension(), 2);
  const auto blocks = split_blocks(random_hermitian_traceless(dim, in.rng), 1);
  const auto z = in.random_z(dim - 1, 1);
  const auto reduced = recursion_hamiltonian(blocks, z);
  const Complex vz = (blocks.coupling.adjoint() * z)(0, 0);
  const Complex zv = (z.adjoint() * blocks.coupling)(0, 0);
  const Complex expected = -(blocks.bottom(0, 0) + 0.5 * (vz + zv));
  return std::max(std::abs(reduced.trace() - expected),
                  std::abs(reduced.trace().real() + corner_rate(blocks, z)));
}

// Five-point centered differences of gamma = 1 + |z|^2 along a Riccati trajectory against
// i gamma (V^dagger z - z^dagger V).
double gamma_rate(Instance& in) {
  const std::size_t dim = in.dimension();
  TrigRandomOptions trig;
  trig.scale = 0.5;
  const auto h = trig_random_hamiltonian(dim, 1, in.seed, trig);
  const auto grid = TimeGrid::from_zero(0.5, 2000);
  RiccatiOptions opts;
  opts.estimate_error = false;
  const auto traj = integrate_riccati(h, grid, opts);
  if (!traj.restarts.empty()) throw Error("gamma_rate instance left the chart");
  const double step = grid.step();
  double worst = 0.0;
  auto gamma = [&](std::size_t i) {
    const double f = traj.z_samples[i].frobenius_norm();
    return 1.0 + f * f;
  };
  for (std::size_t k = 2; k + 2 < traj.times.size(); k += 10) {
    const double fd =
        (gamma(k - 2) - 8.0 * gamma(k - 1) + 8.0 * gamma(k + 1) - gamma(k + 2)) / (12.0 * step);
    const auto blocks = blocks_at(h, traj.times[k]);
    const auto& z = traj.z_samples[k];
    const Complex vz = (blocks.coupling.adjoint() * z)(0, 0);
    const Complex exact = kI * gamma(k) * (vz - std::conj(vz));
    worst = std::max(worst, std::abs(fd - exact));
  }
  return worst;
}

double phase_split(Instance& in) {
  const std::size_t dim = in.dimension();
  TrigRandomOptions trig;
  trig.scale = 0.5;
  const auto h = trig_random_hamiltonian(dim, 1, in.seed, trig);
  const auto solution = hierarchical_solve(h, TimeGrid::from_zero(1.0, 100));
  double worst = 0.0;
  for (const auto& level : solution.levels) {
    const auto& p = level.phases;
    for (std::size_t k = 0; k < p.mu_total.size(); ++k)
      worst = std::max(worst, std::abs(p.geometric[k] + p.dynamical[k] - p.mu_total[k]));
  }
  return worst;
}

double pictures(Instance& in) {
  const auto grid = TimeGrid::from_zero(1.0, 400);
  if (in.seed % 2 == 0) {
    Real5x5 f0{};
    Real5x5 f1{};
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = r + 1; c < 5; ++c) {
        f0[r][c] = 0.3 * in.normal();
        f0[c][r] = -f0[r][c];
        f1[r][c] = 0.3 * in.normal();
        f1[c][r] = -f1[r][c];
      }
    SO5Coefficients coeffs{[f0, f1](double t) {
      Real5x5 f = f0;
      for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) f[r][c] += std::cos(t) * f1[r][c];
      return f;
    }};
    return bloch::crosscheck_pictures(coeffs, grid).max_deviation;
  }
  const Vec3 b0{in.normal(), in.normal(), in.normal()};
  return bloch::crosscheck_pictures(rotating_field(b0, in.normal(), 1.0 + in.normal()), grid)
      .max_deviation;
}

struct Entry {
  const char* name;
  double tolerance;
  Check check;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all{
      {"closure", 1e-10, closure_residual},
      {"closed_form_roots", 1e-12, closed_form_roots},
      {"effective_blocks", 1e-9, effective_blocks},
      {"trace_identity", 1e-10, trace_identity},
      {"gamma_rate", 1e-7, gamma_rate},
      {"phase_split", 1e-7, phase_split},
      {"pictures", 1e-6, pictures},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool VerifyReport::pass() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantSummary& s) { return s.pass(); });
}

std::string VerifyReport::table() const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %10s %12s %12s %9s  %s\n", "invariant", "tolerance",
                "worst", "worst_seed", "instances", "status");
  out << line;
  for (const auto& s : invariants) {
    std::snprintf(line, sizeof line, "%-18s %10.1e %12.3e %12llu %9zu  %s\n", s.name.c_str(),
                  s.tolerance, s.worst, static_cast<unsigned long long>(s.worst_seed),
                  s.instances, s.pass() ? "PASS" : "FAIL");
    out << line;
  }
  for (const auto& s : invariants) {
    if (s.pass()) continue;
    out << "failing seeds for " << s.name << ":";
    for (auto seed : s.failing_seeds) out << " " << seed;
    out << "\n";
  }
  return out.str();
}

VerifyReport run_invariant_suite(const VerifyOptions& options) {
  if (options.max_dim < 2) throw ContractViolation("run_invariant_suite: max_dim must be >= 2");
  if (options.count == 0) throw ContractViolation("run_invariant_suite: count must be positive");
  VerifyReport report;
  for (const auto& entry : entries()) {
    InvariantSummary summary;
    summary.name = entry.name;
    summary.tolerance = options.tolerance.value_or(entry.tolerance);
    for (std::size_t i = 0; i < options.count; ++i) {
      const std::uint64_t seed = options.seed + i;
      Instance in{seed, options.max_dim, std::mt19937_64(seed)};
      double residual;
      try {
        residual = entry.check(in);
      } catch (const Error&) {
        residual = std::numeric_limits<double>::infinity();
      }
      ++summary.instances;
      if (i == 0 || residual > summary.worst) {
        summary.worst = residual;
        summary.worst_seed = seed;
      }
      if (!(residual <= summary.tolerance)) summary.failing_seeds.push_back(seed);
    }
    report.invariants.push_back(std::move(summary));
  }
  return report;
}

}  // namespace unitint
