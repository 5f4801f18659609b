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

#include "pacat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace pacat {

namespace {

std::string describe_space(const FockSpace& s) {
  return "dim " + std::to_string(s.dim());
}

// Partial sum of `populations` over the kept levels, compensated.
double kept_sum(const FockSpace& space, const Eigen::VectorXd& populations) {
  const int n = std::min<int>(space.kept_levels(), populations.size());
  double sum = 0.0, carry = 0.0;
  for (int k = 0; k < n; ++k) {
    const double y = populations(k) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

FockSpace::FockSpace(int dim) : dim_(dim) {
  if (dim < 2) {
    throw ValidationError("FockSpace dimension must be >= 2, got " + std::to_string(dim));
  }
}

void require_same_space(const FockSpace& a, const FockSpace& b) {
  if (!(a == b)) {
    throw DimensionMismatch("Fock space mismatch: " + describe_space(a) + " vs " +
                            describe_space(b));
  }
}

StateVector::StateVector(FockSpace space, CVector amps)
    : space_(space), amps_(std::move(amps)) {
  if (amps_.size() != space_.dim()) {
    throw DimensionMismatch("amplitude vector has " + std::to_string(amps_.size()) +
                            " entries for " + describe_space(space_));
  }
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("state vector has zero or non-finite norm");
  }
  amps_ /= norm;
}

double StateVector::mean_photon_number() const {
  double n = 0.0;
  for (int k = 0; k < dim(); ++k) n += k * std::norm(amps_(k));
  return n;
}

DensityMatrix::DensityMatrix(FockSpace space, CMatrix rho)
    : space_(space), rho_(std::move(rho)) {
  validate();
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : space_(psi.space()), rho_(psi.amps() * psi.amps().adjoint()) {}

DensityMatrix::DensityMatrix(Trusted, FockSpace space, CMatrix rho)
    : space_(space), rho_(std::move(rho)) {}

DensityMatrix DensityMatrix::normalized(FockSpace space, const CMatrix& rho) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw DimensionMismatch("matrix shape does not match " + describe_space(space));
  }
  CMatrix herm = 0.5 * (rho + rho.adjoint());
  const double tr = herm.trace().real();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw ComputationError("cannot normalize a matrix with trace " + std::to_string(tr));
  }
  herm /= tr;
  return DensityMatrix(Trusted{}, space, std::move(herm));
}

DensityMatrix DensityMatrix::maximally_mixed(FockSpace space) {
  CMatrix rho = CMatrix::Identity(space.dim(), space.dim()) / double(space.dim());
  return DensityMatrix(Trusted{}, space, std::move(rho));
}

DensityMatrix DensityMatrix::fock(FockSpace space, int n) {
  return DensityMatrix(fock_state(space, n));
}

double DensityMatrix::mean_photon_number() const {
  double n = 0.0;
  for (int k = 1; k < dim(); ++k) n += k * rho_(k, k).real();
  return n;
}

Complex DensityMatrix::mean_a() const {
  // Tr(rho A) = sum_n sqrt(n) rho[n, n-1]
  Complex s = 0.0;
  for (int n = 1; n < dim(); ++n) s += std::sqrt(double(n)) * rho_(n, n - 1);
  return s;
}

Complex DensityMatrix::mean_a2() const {
  Complex s = 0.0;
  for (int n = 2; n < dim(); ++n) s += std::sqrt(double(n) * (n - 1)) * rho_(n, n - 2);
  return s;
}

void DensityMatrix::validate() const {
  if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim()) {
    throw DimensionMismatch("density matrix shape does not match " + describe_space(space_));
  }
  if (!rho_.allFinite()) throw InvariantError("density matrix has non-finite entries");
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw InvariantError("density matrix not Hermitian: max |rho - rho^dag| = " +
                         std::to_string(herm));
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw InvariantError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho_ + rho_.adjoint()),
                                            Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < kEigenTol) {
    throw InvariantError("density matrix not positive semidefinite: min eigenvalue " +
                         std::to_string(min_eig));
  }
}

GaussianVariances GaussianVariances::from_db(double sq_db, double asq_db) {
  if (!std::isfinite(sq_db) || !std::isfinite(asq_db)) {
    throw ValidationError("squeezing levels must be finite");
  }
  if (sq_db > 0.0 || asq_db < 0.0) {
    throw PhysicalityError("expected sq_db <= 0 <= asq_db, got " + std::to_string(sq_db) +
                           " : " + std::to_string(asq_db));
  }
  GaussianVariances v{kVacuumVariance * std::pow(10.0, sq_db / 10.0),
                      kVacuumVariance * std::pow(10.0, asq_db / 10.0)};
  v.check();
  return v;
}

void GaussianVariances::check() const {
  if (!(v_min > 0.0) || !(v_max >= v_min)) {
    throw PhysicalityError("variances must satisfy 0 < v_min <= v_max");
  }
  if (v_min * v_max < 0.25 - 1e-9) {
    throw PhysicalityError("v_min * v_max = " + std::to_string(v_min * v_max) +
                           " violates the uncertainty bound 1/4");
  }
}

double GaussianVariances::purity() const {
  return 1.0 / (2.0 * std::sqrt(std::max(v_min * v_max, 0.25)));
}

CMatrix annihilation_matrix(const FockSpace& space) {
  const int d = space.dim();
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

CMatrix creation_matrix(const FockSpace& space) {
  return annihilation_matrix(space).adjoint();
}

double tail_mass(const FockSpace& space, const Eigen::VectorXd& populations, double total) {
  return total - kept_sum(space, populations);
}

void check_tail(const FockSpace& space, double tail, const char* what) {
  if (!(tail < kTailGuard)) {
    std::ostringstream os;
    os << what << ": tail mass " << tail << " in the top levels of " << describe_space(space)
       << " exceeds " << kTailGuard << "; increase the dimension";
    throw TruncationError(os.str());
  }
}

StateVector fock_state(const FockSpace& space, int n) {
  if (n < 0 || n >= space.dim()) {
    throw ValidationError("Fock level " + std::to_string(n) + " outside " + describe_space(space));
  }
  CVector v = CVector::Zero(space.dim());
  v(n) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector coherent(const FockSpace& space, Complex alpha) {
  const int d = space.dim();
  const double n_mean = std::norm(alpha);
  CVector amps(d);
  Eigen::VectorXd pops(d);
  Complex c = std::exp(-0.5 * n_mean);
  for (int n = 0; n < d; ++n) {
    if (n > 0) c *= alpha / std::sqrt(double(n));
    amps(n) = c;
    pops(n) = std::norm(c);
  }
  check_tail(space, tail_mass(space, pops), "coherent");
  return StateVector(space, std::move(amps));
}

StateVector squeezed_vacuum(const FockSpace& space, double r, double phi) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw ValidationError("squeezing parameter r must be finite and >= 0");
  }
  const int d = space.dim();
  const Complex ratio = -std::polar(std::tanh(r), phi);
  CVector amps = CVector::Zero(d);
  Eigen::VectorXd pops = Eigen::VectorXd::Zero(d);
  Complex c = 1.0 / std::sqrt(std::cosh(r));
  for (int k = 0; 2 * k < d; ++k) {
    if (k > 0) {
      // sqrt((2k)!)/(2^k k!) from the k-1 term.
      c *= ratio * std::sqrt(double(2 * k - 1) * (2 * k)) / double(2 * k);
    }
    amps(2 * k) = c;
    pops(2 * k) = std::norm(c);
  }
  check_tail(space, tail_mass(space, pops), "squeezed_vacuum");
  return StateVector(space, std::move(amps));
}

StateVector cat_minus(const FockSpace& space, Complex alpha) {
  const double mag2 = std::norm(alpha);
  if (std::sqrt(mag2) < 1e-6) {
    throw DegenerateCatError("cat_minus needs |alpha| >= 1e-6 (normalization is 0/0)");
  }
  const int d = space.dim();
  // Odd components alpha^n / sqrt(n!) with exact weight |alpha|^2n / (n! sinh|alpha|^2).
  CVector amps = CVector::Zero(d);
  Eigen::VectorXd pops = Eigen::VectorXd::Zero(d);
  const double inv_sinh = 1.0 / std::sinh(mag2);
  Complex c = alpha * std::sqrt(inv_sinh);
  for (int n = 1; n < d; n += 2) {
    if (n > 1) c *= alpha * alpha / std::sqrt(double(n - 1) * n);
    amps(n) = c;
    pops(n) = std::norm(c);
  }
  check_tail(space, tail_mass(space, pops), "cat_minus");
  return StateVector(space, std::move(amps));
}

DensityMatrix thermal(const FockSpace& space, double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw ValidationError("thermal occupation must be finite and >= 0");
  }
  const int d = space.dim();
  const double q = nbar / (nbar + 1.0);
  check_tail(space, std::pow(q, space.kept_levels()), "thermal");
  Eigen::VectorXd p(d);
  double w = 1.0 / (nbar + 1.0);
  for (int n = 0; n < d; ++n) {
    p(n) = w;
    w *= q;
  }
  CMatrix rho = p.cast<Complex>().asDiagonal();
  return DensityMatrix::normalized(space, rho);
}

DensityMatrix squeezed_thermal(const FockSpace& space, const GaussianVariances& v, double phi) {
  v.check();
  // Husimi covariance V + I/2 fixes the Bargmann generating function
  // exp(a z^2/2 + conj(a) w^2/2 + c z w) of the Fock elements.
  const double prod = std::max(v.v_min * v.v_max, 0.25);
  const double v_max = prod / v.v_min;
  const double qx = 1.0 / (v.v_min + 0.5);
  const double qp = 1.0 / (v_max + 0.5);
  const double c = std::max(0.0, 1.0 - 0.5 * (qx + qp));
  const Complex a = -std::polar(0.5 * (qx - qp), phi);
  const Complex a_conj = std::conj(a);

  const int d = space.dim();
  std::vector<double> sq(d + 1);
  for (int n = 0; n <= d; ++n) sq[n] = std::sqrt(double(n));

  CMatrix rho = CMatrix::Zero(d, d);
  rho(0, 0) = std::sqrt(qx * qp);
  for (int n = 2; n < d; n += 2) rho(0, n) = a_conj * sq[n - 1] * rho(0, n - 2) / sq[n];
  for (int m = 0; m + 1 < d; ++m) {
    for (int n = 0; n < d; ++n) {
      Complex acc = 0.0;
      if (m >= 1) acc += a * sq[m] * rho(m - 1, n);
      if (n >= 1) acc += c * sq[n] * rho(m, n - 1);
      rho(m + 1, n) = acc / sq[m + 1];
    }
  }
  check_tail(space, tail_mass(space, rho.diagonal().real()), "squeezed_thermal");
  return DensityMatrix::normalized(space, rho);
}

DensityMatrix squeezed_thermal_from_db(const FockSpace& space, double sq_db, double asq_db,
                                       double phi) {
  return squeezed_thermal(space, GaussianVariances::from_db(sq_db, asq_db), phi);
}

CMatrix squeeze_operator(const FockSpace& space, double r, double phi) {
  const CMatrix a = annihilation_matrix(space);
  const Complex xi = std::polar(r, phi);
  const CMatrix a2 = a * a;
  const CMatrix gen = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
  return gen.exp();
}

int effective_dim(const DensityMatrix& rho, double tol) {
  // With P the projector on the first l levels and t the population beyond
  // them, ||rho - P rho P||_1 <= t + 2 sqrt(t (1 - t)) (Hoelder on the
  // off-diagonal blocks). Any bounded observable changes by at most that.
  const int d = rho.dim();
  Eigen::VectorXd tail(d + 1);
  tail(d) = 0.0;
  for (int n = d - 1; n >= 0; --n) tail(n) = tail(n + 1) + std::max(rho.population(n), 0.0);
  for (int l = 1; l <= d; ++l) {
    const double t = std::min(tail(l), 1.0);
    if (t + 2.0 * std::sqrt(t * (1.0 - t)) < tol) return std::max(l, 2);
  }
  return d;
}

DensityMatrix embed(const DensityMatrix& rho, const FockSpace& target) {
  if (target.dim() < rho.dim()) return truncate(rho, target);
  CMatrix m = CMatrix::Zero(target.dim(), target.dim());
  m.topLeftCorner(rho.dim(), rho.dim()) = rho.matrix();
  return DensityMatrix::normalized(target, m);
}

DensityMatrix truncate(const DensityMatrix& rho, const FockSpace& target) {
  if (target.dim() > rho.dim()) return embed(rho, target);
  return DensityMatrix::normalized(target,
                                   rho.matrix().topLeftCorner(target.dim(), target.dim()));
}

DensityMatrix rotate(const DensityMatrix& rho, double theta) {
  const int d = rho.dim();
  CVector ph(d);
  for (int n = 0; n < d; ++n) ph(n) = std::polar(1.0, theta * n);
  CMatrix out = ph.asDiagonal() * rho.matrix() * ph.conjugate().asDiagonal();
  return DensityMatrix::normalized(rho.space(), out);
}

}  // namespace pacat
