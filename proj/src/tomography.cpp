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

#include "pacat/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "pacat/channels.hpp"

namespace pacat {

namespace {

constexpr double kGridLo = -8.0;
constexpr double kGridHi = 8.0;
constexpr int kGridPoints = 4001;
constexpr double kMinProb = 1e-300;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Real part of P^dag rho P, P = diag(e^{i m theta}).
Eigen::MatrixXd rotated_real(const CMatrix& rho, double theta) {
  const int d = int(rho.rows());
  Eigen::MatrixXd out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) out(m, n) = (rho(m, n) * std::polar(1.0, (n - m) * theta)).real();
  return out;
}

// Samples sharing one phase, with their Hermite rows precomputed.
struct PhaseGroup {
  double theta;
  Eigen::MatrixXd psi;  // samples x dim
  Eigen::VectorXd weight;
};

std::vector<PhaseGroup> group_by_phase(const QuadratureDataset& data, const MleConfig& cfg) {
  std::map<double, std::map<double, double>> binned;
  std::map<double, std::vector<double>> raw;
  for (const auto& s : data.samples) {
    if (cfg.binning) {
      const double center = (std::floor(s.x / cfg.bin_width) + 0.5) * cfg.bin_width;
      binned[s.theta][center] += 1.0;
    } else {
      raw[s.theta].push_back(s.x);
    }
  }
  std::vector<PhaseGroup> groups;
  auto build = [&](double theta, const std::vector<std::pair<double, double>>& xs) {
    PhaseGroup g{theta, Eigen::MatrixXd(xs.size(), cfg.dim), Eigen::VectorXd(xs.size())};
    for (std::size_t j = 0; j < xs.size(); ++j) {
      g.psi.row(j) = hermite_functions(cfg.dim, xs[j].first).transpose();
      g.weight(j) = xs[j].second;
    }
    groups.push_back(std::move(g));
  };
  if (cfg.binning) {
    for (const auto& [theta, bins] : binned) {
      std::vector<std::pair<double, double>> xs(bins.begin(), bins.end());
      build(theta, xs);
    }
  } else {
    for (const auto& [theta, v] : raw) {
      std::vector<std::pair<double, double>> xs;
      xs.reserve(v.size());
      for (double x : v) xs.emplace_back(x, 1.0);
      build(theta, xs);
    }
  }
  return groups;
}

struct Evaluation {
  double mean_log_likelihood;
  CMatrix r;
};

Evaluation evaluate(const std::vector<PhaseGroup>& groups, const CMatrix& rho, double total_weight,
                    bool want_r) {
  const int d = int(rho.rows());
  KahanSum ll;
  CMatrix r = CMatrix::Zero(d, d);
  for (const auto& g : groups) {
    const Eigen::MatrixXd rot = rotated_real(rho, g.theta);
    const Eigen::VectorXd prob =
        (g.psi * rot).cwiseProduct(g.psi).rowwise().sum().cwiseMax(kMinProb);
    for (Eigen::Index j = 0; j < prob.size(); ++j) ll.add(g.weight(j) * std::log(prob(j)));
    if (!want_r) continue;
    const Eigen::VectorXd scale = g.weight.cwiseQuotient(prob);
    const Eigen::MatrixXd rg = g.psi.transpose() * scale.asDiagonal() * g.psi;
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) r(m, n) += rg(m, n) * std::polar(1.0, (m - n) * g.theta);
  }
  return {ll.sum / total_weight, r / total_weight};
}

}  // namespace

void QuadratureDataset::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ValidationError("dataset efficiency must lie in (0, 1]");
  }
  for (const auto& s : samples) {
    if (!(s.theta >= 0.0 && s.theta < std::numbers::pi)) {
      throw ValidationError("sample phase " + std::to_string(s.theta) + " outside [0, pi)");
    }
    if (!std::isfinite(s.x)) throw ValidationError("non-finite quadrature sample");
  }
}

void MleConfig::validate() const {
  if (dim < 2) throw ValidationError("MLE dimension must be >= 2");
  if (max_iters < 0) throw ValidationError("MLE max_iters must be >= 0");
  if (!(stop_tol > 0.0)) throw ValidationError("MLE stop_tol must be > 0");
  if (!(dilution > 0.0 && dilution <= 1.0)) {
    throw ValidationError("MLE dilution must lie in (0, 1]");
  }
  if (binning && !(bin_width > 0.0)) throw ValidationError("MLE bin width must be > 0");
}

Eigen::VectorXd hermite_functions(int count, double x) {
  Eigen::VectorXd psi(count);
  psi(0) = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (count > 1) psi(1) = std::numbers::sqrt2 * x * psi(0);
  for (int n = 1; n + 1 < count; ++n) {
    psi(n + 1) = std::sqrt(2.0 / (n + 1)) * x * psi(n) - std::sqrt(double(n) / (n + 1)) * psi(n - 1);
  }
  return psi;
}

double quadrature_pdf(const DensityMatrix& rho, double theta, double x) {
  const int levels = effective_dim(rho);
  const Eigen::VectorXd psi = hermite_functions(levels, x);
  const Eigen::MatrixXd rot = rotated_real(rho.matrix().topLeftCorner(levels, levels), theta);
  return psi.dot(rot * psi);
}

std::vector<double> default_phases(int n) {
  if (n < 1) throw ValidationError("need at least one phase");
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = std::numbers::pi * k / n;
  return out;
}

QuadratureDataset sample_quadratures(const DensityMatrix& rho, const std::vector<double>& thetas,
                                     int n_per_theta, double efficiency, std::uint64_t seed) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ValidationError("detection efficiency must lie in (0, 1]");
  }
  if (n_per_theta < 0) throw ValidationError("n_per_theta must be >= 0");
  for (double t : thetas) {
    if (!(t >= 0.0 && t < std::numbers::pi)) {
      throw ValidationError("phase " + std::to_string(t) + " outside [0, pi)");
    }
  }
  const DensityMatrix detected = loss(rho, LossParam(efficiency));
  const int levels = effective_dim(detected);
  const CMatrix block = detected.matrix().topLeftCorner(levels, levels);

  const double step = (kGridHi - kGridLo) / (kGridPoints - 1);
  std::vector<double> grid(kGridPoints);
  Eigen::MatrixXd psi(kGridPoints, levels);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = kGridLo + step * i;
    psi.row(i) = hermite_functions(levels, grid[i]).transpose();
  }

  QuadratureDataset out;
  out.efficiency = efficiency;
  out.seed = seed;
  out.samples.reserve(thetas.size() * std::size_t(n_per_theta));
  std::vector<double> cdf(kGridPoints);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double theta = thetas[k];
    const Eigen::VectorXd pdf =
        (psi * rotated_real(block, theta)).cwiseProduct(psi).rowwise().sum().cwiseMax(0.0);
    cdf[0] = 0.0;
    for (int i = 1; i < kGridPoints; ++i) cdf[i] = cdf[i - 1] + 0.5 * step * (pdf(i) + pdf(i - 1));
    const double total = cdf.back();

    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(k)};
    std::mt19937_64 rng(seq);
    for (int j = 0; j < n_per_theta; ++j) {
      const double u = double(rng() >> 11) * 0x1.0p-53 * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      std::size_t hi = std::clamp<std::size_t>(it - cdf.begin(), 1, kGridPoints - 1);
      const std::size_t lo = hi - 1;
      const double span = cdf[hi] - cdf[lo];
      const double frac = span > 0.0 ? (u - cdf[lo]) / span : 0.5;
      out.samples.push_back({theta, grid[lo] + frac * step});
    }
  }
  return out;
}

double mean_log_likelihood(const QuadratureDataset& data, const DensityMatrix& rho) {
  MleConfig cfg;
  cfg.dim = rho.dim();
  const auto groups = group_by_phase(data, cfg);
  return evaluate(groups, rho.matrix(), double(data.samples.size()), false).mean_log_likelihood;
}

MleResult mle_reconstruct(const QuadratureDataset& data, const MleConfig& cfg) {
  cfg.validate();
  data.validate();
  if (data.samples.size() < 100) {
    throw ValidationError("MLE needs at least 100 samples, got " +
                          std::to_string(data.samples.size()));
  }
  const FockSpace space(cfg.dim);
  const auto groups = group_by_phase(data, cfg);
  const double total = double(data.samples.size());
  const CMatrix id = CMatrix::Identity(cfg.dim, cfg.dim);

  CMatrix rho = id / double(cfg.dim);
  std::vector<double> history;
  bool converged = false;
  int it = 0;
  Evaluation ev = evaluate(groups, rho, total, cfg.max_iters > 0);
  history.push_back(ev.mean_log_likelihood);
  while (it < cfg.max_iters) {
    const CMatrix r = (1.0 - cfg.dilution) * id + cfg.dilution * ev.r;
    CMatrix next = r * rho * r;
    next = 0.5 * (next + next.adjoint());
    rho = next / next.trace().real();
    ++it;
    ev = evaluate(groups, rho, total, true);
    const double prev = history.back();
    history.push_back(ev.mean_log_likelihood);
    if (std::abs(ev.mean_log_likelihood - prev) < cfg.stop_tol * std::abs(prev)) {
      converged = true;
      break;
    }
  }
  return {DensityMatrix::normalized(space, rho), it, converged || cfg.max_iters == 0,
          std::move(history)};
}

}  // namespace pacat
