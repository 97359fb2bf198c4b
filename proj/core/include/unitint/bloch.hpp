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

#include <array>
#include <vector>

#include "unitint/grid.hpp"
#include "unitint/hamiltonian.hpp"
#include "unitint/linalg.hpp"
#include "unitint/riccati.hpp"

// Inverse stereographic projections of the Riccati coordinate onto unit spheres,
// and the linear precession equations the projected vectors obey.

namespace unitint::bloch {

using Vec5 = std::array<double, 5>;

/// m+ = m1 + i m2 = -2 conj(z) / (1 + |z|^2), m3 = (1 - |z|^2) / (1 + |z|^2).
Vec3 project2(Complex z);
/// Inverse of project2; undefined at m3 = -1.
Complex unproject2(const Vec3& m);

/// m_mu = -2 z_mu / (1 + z.z) for mu = 1..4, m5 = (1 - z.z) / (1 + z.z).
Vec5 project5(const SO5State& z);
SO5State unproject5(const Vec5& m);

/// dm/dt = -kappa B x m. kappa = 1 for H = -1/2 sigma.B with sigma+- = sigma_x +- i sigma_y.
Vec3 bloch3_rhs(const Vec3& field, const Vec3& m, double kappa = 1.0);
/// dm/dt = 2 F m.
Vec5 bloch5_rhs(const Real5x5& f, const Vec5& m);

/// Bloch vector of the state U e_N without going through z (no pole). 2x2 input.
Vec3 bloch3_from_evolution(const ComplexMatrix& U);
/// Five-vector from the right 4x2 block column of a 4x4 SO(5) evolution; no pole.
Vec5 bloch5_from_evolution(const ComplexMatrix& U);

/// RK4 on the linear equations over `grid`, same stage layout as the Riccati integrator.
std::vector<Vec3> integrate_bloch3(const FieldEvaluator& field, const TimeGrid& grid, const Vec3& m0,
                                   double kappa = 1.0);
std::vector<Vec5> integrate_bloch5(const SO5Coefficients& f, const TimeGrid& grid, const Vec5& m0);

/// Least-squares kappa in dm/dt = -kappa B x m from centered differences of a sampled path.
double fit_kappa(const FieldEvaluator& field, const std::vector<double>& times,
                 const std::vector<Vec3>& path);

struct PictureReport {
  std::size_t dimension = 0;  // 3 or 5
  std::vector<double> times;
  std::vector<std::vector<double>> riccati_path;  // projected from the Riccati solution
  std::vector<std::vector<double>> linear_path;   // integrated linear equation
  double max_deviation = 0.0;
  double max_norm_drift = 0.0;  // over the linear path
  double kappa = 0.0;           // measured (SU(2)); 2 is the fixed SO(5) factor
  std::size_t restarts = 0;
};

/// Spin-1/2: Riccati path (hierarchical n = 1 solve) against the linear precession.
PictureReport crosscheck_pictures(const SpinHalfField& field, const TimeGrid& grid,
                                  const RiccatiOptions& opts = {});
/// SO(5): four-real Riccati path against dm/dt = 2 F m.
PictureReport crosscheck_pictures(const SO5Coefficients& f, const TimeGrid& grid,
                                  const RiccatiOptions& opts = {});

}  // namespace unitint::bloch
