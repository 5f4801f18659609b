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

#include "pacat/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pacat/parallel.hpp"

namespace pacat {

namespace {

// Levels above this bound contribute < 1e-13 to any W value.
constexpr double kTrimTol = 1e-13;

// Leading `levels` x `levels` block of rho stored by diagonal, plus the
// coefficients of the normalized Laguerre recurrence for each offset k.
struct Prepared {
  int levels = 0;
  // diag_re[k][m] + i diag_im[k][m] = rho(m, m + k)
  std::vector<std::vector<double>> diag_re, diag_im;
  // S_m = -(c1 - x c0) S_{m-1} - c2 S_{m-2} for the offset-k diagonal.
  std::vector<std::vector<double>> c0, c1, c2;
  std::vector<double> half_lgamma;  // lgamma(k + 1) / 2
  // Upper bound on |Im W|: levels^2 max|rho_mn - conj(rho_nm)| / (2 pi).
  double residue_bound = 0.0;

  Prepared(const CMatrix& rho, int n) : levels(n) {
    diag_re.resize(n);
    diag_im.resize(n);
    c0.resize(n);
    c1.resize(n);
    c2.resize(n);
    half_lgamma.resize(n);
    for (int k = 0; k < n; ++k) {
      const int len = n - k;
      diag_re[k].resize(len);
      diag_im[k].resize(len);
      c0[k].assign(len, 0.0);
      c1[k].assign(len, 0.0);
      c2[k].assign(len, 0.0);
      half_lgamma[k] = 0.5 * std::lgamma(k + 1.0);
      for (int m = 0; m < len; ++m) {
        // rho(m, m + k) = conj(rho(m + k, m)); both triangles are averaged so
        // a slightly non-Hermitian input still yields a real W.
        const Complex v = 0.5 * (rho(m, m + k) + std::conj(rho(m + k, m)));
        diag_re[k][m] = v.real();
        diag_im[k][m] = v.imag();
        residue_bound = std::max(residue_bound, std::abs(rho(m, m + k) - std::conj(rho(m + k, m))));
      }
      for (int m = 1; m < len; ++m) {
        const double inv = 1.0 / std::sqrt(double(m) * double(m + k));
        c0[k][m] = inv;
        c1[k][m] = (2.0 * m - 1.0 + k) * inv;
        c2[k][m] = std::sqrt(double(m - 1) * double(m - 1 + k)) * inv;
      }
    }
    residue_bound *= double(n) * n / (2.0 * std::numbers::pi);
    if (residue_bound > 1e-10) {
      throw ComputationError("Wigner evaluation: imaginary residue up to " +
                             std::to_string(residue_bound) + " from a non-Hermitian input");
    }
  }
};

// Sum of rho_mn times the Wigner function of |m><n| over the prepared block.
// With n = m + k,
//   W_mn = (-1)^m/pi sqrt(m!/n!) (2 beta)^k exp(-2|beta|^2) L_m^(k)(4|beta|^2),
// evaluated along each diagonal by the upward recurrence in m, which is
// stable for every argument. The k-dependent prefactor is applied once per
// diagonal in log form; running values are rescaled to stay finite.
double wigner_block(const Prepared& pr, double x, double p) {
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  // beta = (x + i p)/sqrt2, so |2 beta|^2 = 4 |beta|^2 = 2 (x^2 + p^2).
  const double lag_x = 2.0 * (x * x + p * p);
  const double log_r = lag_x > 0.0 ? 0.5 * std::log(lag_x) : 0.0;
  const double phi = std::atan2(p, x);

  double w = 0.0;
  for (int k = 0; k < pr.levels; ++k) {
    if (k > 0 && lag_x == 0.0) break;
    const double* re = pr.diag_re[k].data();
    const double* im = pr.diag_im[k].data();
    const double* c0 = pr.c0[k].data();
    const double* c1 = pr.c1[k].data();
    const double* c2 = pr.c2[k].data();
    const int len = pr.levels - k;

    double s_prev = 0.0, s = 1.0;
    double acc_re = re[0], acc_im = im[0];
    double log_scale = 0.0;
    for (int m = 1; m < len; ++m) {
      const double next = -(c1[m] - lag_x * c0[m]) * s - c2[m] * s_prev;
      s_prev = s;
      s = next;
      acc_re += re[m] * s;
      acc_im += im[m] * s;
      if (std::abs(s) > kBig) {
        s /= kBig;
        s_prev /= kBig;
        acc_re /= kBig;
        acc_im /= kBig;
        log_scale += log_big;
      }
    }
    const double log_pref = k * log_r - 0.5 * lag_x - pr.half_lgamma[k] + log_scale;
    const double pref = std::exp(log_pref) / std::numbers::pi;
    const double c = std::cos(k * phi), sn = std::sin(k * phi);
    const double term = pref * (acc_re * c - acc_im * sn);
    w += k == 0 ? term : 2.0 * term;
  }
  if (!std::isfinite(w)) {
    throw ComputationError("Wigner evaluation overflowed at (" + std::to_string(x) + ", " +
                           std::to_string(p) + ")");
  }
  return w;
}

std::vector<double> linspace(AxisRange r, int n) {
  std::vector<double> v(n);
  const double step = (r.hi - r.lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = r.lo + step * i;
  v[n - 1] = r.hi;
  return v;
}

}  // namespace

double WignerGrid::integral() const {
  if (x_axis.size() < 2 || p_axis.size() < 2) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * dx() * dp();
}

double wigner_point(const DensityMatrix& rho, double x, double p) {
  const Prepared pr(rho.matrix(), effective_dim(rho, kTrimTol));
  return wigner_block(pr, x, p);
}

double wigner_origin_parity(const DensityMatrix& rho) {
  double s = 0.0;
  for (int n = 0; n < rho.dim(); ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * rho.population(n);
  return s / std::numbers::pi;
}

WignerGrid wigner_grid(const DensityMatrix& rho, AxisRange x_range, AxisRange p_range, int nx,
                       int np) {
  auto check = [](AxisRange r, int n, const char* name) {
    if (n < 2) throw GridError(std::string(name) + " axis needs at least 2 points");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
      throw GridError(std::string(name) + " range is empty or inverted");
    }
  };
  check(x_range, nx, "x");
  check(p_range, np, "p");

  WignerGrid grid;
  grid.x_axis = linspace(x_range, nx);
  grid.p_axis = linspace(p_range, np);
  grid.values.assign(std::size_t(nx) * np, 0.0);

  const Prepared pr(rho.matrix(), effective_dim(rho, kTrimTol));
  parallel_for(std::size_t(nx), [&](std::size_t ix) {
    for (int ip = 0; ip < np; ++ip) {
      grid.values[ix * np + ip] = wigner_block(pr, grid.x_axis[ix], grid.p_axis[ip]);
    }
  });
  return grid;
}

NegativityMetrics negativity_metrics(const WignerGrid& grid) {
  if (grid.values.empty()) throw GridError("empty Wigner grid");
  double min_value = grid.values.front();
  double neg = 0.0;
  for (double v : grid.values) {
    min_value = std::min(min_value, v);
    neg += std::min(v, 0.0);
  }
  return {min_value, neg * grid.dx() * grid.dp()};
}

}  // namespace pacat
