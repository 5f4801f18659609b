// Copyright 2026 The pacat Authors
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

#include <string>
#include <vector>

#include "pacat/fock.hpp"

namespace pacat {

inline constexpr const char* kWignerConvention = "hbar=1, vac-var=1/2";

struct AxisRange {
  double lo;
  double hi;
};

// Row-major over x: values[ix * p_axis.size() + ip].
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  std::vector<double> values;
  std::string convention = kWignerConvention;

  double at(std::size_t ix, std::size_t ip) const { return values[ix * p_axis.size() + ip]; }
  double dx() const { return x_axis[1] - x_axis[0]; }
  double dp() const { return p_axis[1] - p_axis[0]; }
  // Riemann sum of W dx dp.
  double integral() const;
};

struct NegativityMetrics {
  double min_value;
  double negative_volume;
};

// W(x, p) with x = (a + a^dag)/sqrt(2); vacuum W(0,0) = 1/pi.
double wigner_point(const DensityMatrix& rho, double x, double p);

// (1/pi) sum_n (-1)^n rho_nn.
double wigner_origin_parity(const DensityMatrix& rho);

// Grid over [x_range] x [p_range] with nx x np equally spaced points
// (endpoints included). Evaluated concurrently; result independent of
// thread count.
WignerGrid wigner_grid(const DensityMatrix& rho, AxisRange x_range, AxisRange p_range, int nx,
                       int np);
inline WignerGrid wigner_grid(const DensityMatrix& rho, double half_width = 5.0,
                              int points = 201) {
  return wigner_grid(rho, {-half_width, half_width}, {-half_width, half_width}, points, points);
}

NegativityMetrics negativity_metrics(const WignerGrid& grid);

}  // namespace pacat
