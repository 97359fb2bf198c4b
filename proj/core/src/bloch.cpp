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

#include "unitint/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "unitint/errors.hpp"
#include "unitint/factorization.hpp"

namespace unitint::bloch {

namespace {

template <std::size_t D>
std::array<double, D> add_scaled(const std::array<double, D>& a, const std::array<double, D>& b,
                                 double s) {
  std::array<double, D> out;
  for (std::size_t i = 0; i < D; ++i) out[i] = a[i] + s * b[i];
  return out;
}

template <std::size_t D>
double norm(const std::array<double, D>& a) {
  double sum = 0.0;
  for (double v : a) sum += v * v;
  return std::sqrt(sum);
}

template <std::size_t D, class Rhs>
std::vector<std::array<double, D>> rk4(const Rhs& rhs, const TimeGrid& grid,
                                       const std::array<double, D>& m0) {
  grid.validate();
  const double h = grid.step();
  std::vector<std::array<double, D>> out{m0};
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.at(k);
    const auto& m = out.back();
    const auto k1 = rhs(t, m);
    const auto k2 = rhs(t + 0.5 * h, add_scaled(m, k1, 0.5 * h));
    const auto k3 = rhs(t + 0.5 * h, add_scaled(m, k2, 0.5 * h));
    const auto k4 = rhs(t + h, add_scaled(m, k3, h));
    auto next = add_scaled(m, k1, h / 6.0);
    next = add_scaled(next, k2, h / 3.0);
    next = add_scaled(next, k3, h / 3.0);
    out.push_back(add_scaled(next, k4, h / 6.0));
  }
  return out;
}

template <std::size_t D>
std::vector<double> as_vector(const std::array<double, D>& a) {
  return {a.begin(), a.end()};
}

template <std::size_t D>
void fill_report(PictureReport& report, const std::vector<std::array<double, D>>& riccati,
                 const std::vector<std::array<double, D>>& linear) {
  report.dimension = D;
  for (std::size_t k = 0; k < riccati.size(); ++k) {
    report.riccati_path.push_back(as_vector(riccati[k]));
    report.linear_path.push_back(as_vector(linear[k]));
    std::array<double, D> diff;
    for (std::size_t i = 0; i < D; ++i) diff[i] = riccati[k][i] - linear[k][i];
    report.max_deviation = std::max(report.max_deviation, norm(diff));
    report.max_norm_drift = std::max(report.max_norm_drift, std::abs(norm(linear[k]) - 1.0));
  }
}

}  // namespace

Vec3 project2(Complex z) {
  const double r2 = std::norm(z);
  const double d = 1.0 + r2;
  const Complex m_plus = -2.0 * std::conj(z) / d;
  return {m_plus.real(), m_plus.imag(), (1.0 - r2) / d};
}

Complex unproject2(const Vec3& m) {
  if (m[2] <= -1.0) throw ContractViolation("unproject2: south pole has no finite preimage");
  return -Complex(m[0], -m[1]) / (1.0 + m[2]);
}

Vec5 project5(const SO5State& z) {
  double zz = 0.0;
  for (double v : z) zz += v * v;
  const double d = 1.0 + zz;
  return {-2.0 * z[0] / d, -2.0 * z[1] / d, -2.0 * z[2] / d, -2.0 * z[3] / d, (1.0 - zz) / d};
}

SO5State unproject5(const Vec5& m) {
  if (m[4] <= -1.0) throw ContractViolation("unproject5: pole has no finite preimage");
  const double d = 1.0 + m[4];
  return {-m[0] / d, -m[1] / d, -m[2] / d, -m[3] / d};
}

Vec3 bloch3_rhs(const Vec3& b, const Vec3& m, double kappa) {
  return {-kappa * (b[1] * m[2] - b[2] * m[1]), -kappa * (b[2] * m[0] - b[0] * m[2]),
          -kappa * (b[0] * m[1] - b[1] * m[0])};
}

Vec5 bloch5_rhs(const Real5x5& f, const Vec5& m) {
  Vec5 out{};
  for (std::size_t mu = 0; mu < 5; ++mu)
    for (std::size_t nu = 0; nu < 5; ++nu) out[mu] += 2.0 * f[mu][nu] * m[nu];
  return out;
}

Vec3 bloch3_from_evolution(const ComplexMatrix& U) {
  if (U.rows() != 2 || U.cols() != 2)
    throw ContractViolation("bloch3_from_evolution: expected a 2x2 evolution");
  const Complex a = U(0, 1);
  const Complex b = U(1, 1);
  const Complex m_plus = -2.0 * std::conj(a) * b;
  return {m_plus.real(), m_plus.imag(), std::norm(b) - std::norm(a)};
}

Vec5 bloch5_from_evolution(const ComplexMatrix& U) {
  if (U.rows() != 4 || U.cols() != 4)
    throw ContractViolation("bloch5_from_evolution: expected a 4x4 evolution");
  const auto a = U.block(0, 2, 2, 2);
  const auto b = U.block(2, 2, 2, 2);
  // With z = a b^{-1} quaternionic, b b^dagger = I / (1 + z.z), so -2 a b^dagger renders
  // (m1..m4) the same way z renders (z1..z4).
  const auto quaternion = so5_state_from_matrix(-2.0 * a * b.adjoint());
  const double bb = b.frobenius_norm();
  return {quaternion[0], quaternion[1], quaternion[2], quaternion[3], bb * bb - 1.0};
}

std::vector<Vec3> integrate_bloch3(const FieldEvaluator& field, const TimeGrid& grid,
                                   const Vec3& m0, double kappa) {
  return rk4(
      [&](double t, const Vec3& m) { return bloch3_rhs(field(t), m, kappa); }, grid, m0);
}

std::vector<Vec5> integrate_bloch5(const SO5Coefficients& f, const TimeGrid& grid,
                                   const Vec5& m0) {
  return rk4(
      [&](double t, const Vec5& m) {
        const auto coeffs = f.evaluate(t);
        if (!is_antisymmetric(coeffs)) throw ModelError("SO(5) coefficients are not antisymmetric");
        return bloch5_rhs(coeffs, m);
      },
      grid, m0);
}

double fit_kappa(const FieldEvaluator& field, const std::vector<double>& times,
                 const std::vector<Vec3>& path) {
  if (times.size() != path.size() || times.size() < 3)
    throw ContractViolation("fit_kappa: need at least three matching samples");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    const double dt = times[k + 1] - times[k - 1];
    const auto b = field(times[k]);
    const auto& m = path[k];
    // Unit-kappa rate: -B x m.
    const auto c = bloch3_rhs(b, m, 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
      const double rate = (path[k + 1][i] - path[k - 1][i]) / dt;
      num += rate * c[i];
      den += c[i] * c[i];
    }
  }
  return den > 0.0 ? num / den : 1.0;
}

PictureReport crosscheck_pictures(const SpinHalfField& field, const TimeGrid& grid,
                                  const RiccatiOptions& opts) {
  const auto solution = hierarchical_solve(field.hamiltonian(), grid, opts);
  const auto& path = solution.top;
  std::vector<Vec3> riccati;
  riccati.reserve(path.times.size());
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    // First segment maps z directly; after a restart z refers to a re-anchored frame.
    if (path.trajectory.segment_of(k) == 0)
      riccati.push_back(project2(path.trajectory.z_samples[k](0, 0)));
    else
      riccati.push_back(bloch3_from_evolution(path.U[k]));
  }
  const auto linear = integrate_bloch3(field.field, grid, Vec3{0.0, 0.0, 1.0});

  PictureReport report;
  report.times = path.times;
  report.restarts = path.trajectory.restarts.size();
  fill_report(report, riccati, linear);
  report.kappa = fit_kappa(field.field, path.times, riccati);
  return report;
}

PictureReport crosscheck_pictures(const SO5Coefficients& f, const TimeGrid& grid,
                                  const RiccatiOptions& opts) {
  const auto path = factorized_solve_so5(f, grid, opts);
  std::vector<Vec5> riccati;
  riccati.reserve(path.times.size());
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    if (path.trajectory.segment_of(k) == 0)
      riccati.push_back(project5(so5_state_from_matrix(path.trajectory.z_samples[k])));
    else
      riccati.push_back(bloch5_from_evolution(path.U[k]));
  }
  const auto linear = integrate_bloch5(f, grid, Vec5{0.0, 0.0, 0.0, 0.0, 1.0});

  PictureReport report;
  report.times = path.times;
  report.restarts = path.trajectory.restarts.size();
  fill_report(report, riccati, linear);

  // Fit c in dm/dt = c F m on interior points; the linear equation has c = 2.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 1; k + 1 < riccati.size(); ++k) {
    const double dt = path.times[k + 1] - path.times[k - 1];
    const auto coeffs = f.evaluate(path.times[k]);
    const auto fm = bloch5_rhs(coeffs, riccati[k]);  // 2 F m
    for (std::size_t i = 0; i < 5; ++i) {
      const double rate = (riccati[k + 1][i] - riccati[k - 1][i]) / dt;
      num += rate * 0.5 * fm[i];
      den += 0.25 * fm[i] * fm[i];
    }
  }
  report.kappa = den > 0.0 ? num / den : 2.0;
  return report;
}

}  // namespace unitint::bloch
