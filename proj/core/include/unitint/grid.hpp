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

#include <cstddef>
#include <vector>

#include "unitint/errors.hpp"

namespace unitint {

/// Uniform grid t_k = t_start + k * (t_end - t_start) / steps, k = 0..steps.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t steps = 1;

  static TimeGrid from_zero(double t_end, std::size_t steps) { return {0.0, t_end, steps}; }

  double step() const { return (t_end - t_start) / static_cast<double>(steps); }
  double at(std::size_t k) const {
    return k == steps ? t_end : t_start + static_cast<double>(k) * step();
  }
  std::size_t size() const { return steps + 1; }
  std::vector<double> times() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(k);
    return out;
  }
  /// Sub-grid between two indices of this grid.
  TimeGrid window(std::size_t first, std::size_t last) const {
    if (last <= first || last > steps) throw ContractViolation("TimeGrid::window: bad range");
    return {at(first), at(last), last - first};
  }
  void validate() const {
    if (steps < 1) throw ContractViolation("TimeGrid: steps must be at least 1");
    if (!(t_end > t_start)) throw ContractViolation("TimeGrid: t_end must exceed t_start");
  }
};

}  // namespace unitint
