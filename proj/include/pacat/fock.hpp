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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pacat/errors.hpp"

namespace pacat {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kDefaultDim = 40;
// Largest population allowed in the top 10% of the truncated basis.
inline constexpr double kTailGuard = 1e-6;
inline constexpr double kVacuumVariance = 0.5;

// Truncated single-mode Fock basis |0>..|dim-1>.
class FockSpace {
 public:
  explicit FockSpace(int dim = kDefaultDim);

  int dim() const { return dim_; }
  // Number of levels below the guarded top 10%.
  int kept_levels() const { return dim_ - std::max(1, dim_ / 10); }

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int dim_;
};

void require_same_space(const FockSpace& a, const FockSpace& b);

// Normalized pure state. The constructor always renormalizes explicitly.
class StateVector {
 public:
  StateVector(FockSpace space, CVector amps);

  const FockSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const CVector& amps() const { return amps_; }
  Complex operator[](int n) const { return amps_(n); }

  double mean_photon_number() const;

 private:
  FockSpace space_;
  CVector amps_;
};

// Hermitian, unit-trace, positive semidefinite matrix over a FockSpace.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kEigenTol = -1e-8;

  // Validates all three invariants; throws InvariantError.
  DensityMatrix(FockSpace space, CMatrix rho);
  explicit DensityMatrix(const StateVector& psi);

  // Hermitian part divided by its trace. Used for results of trusted
  // numerical maps; positivity is not re-checked.
  static DensityMatrix normalized(FockSpace space, const CMatrix& rho);
  static DensityMatrix maximally_mixed(FockSpace space);
  static DensityMatrix fock(FockSpace space, int n);

  const FockSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const CMatrix& matrix() const { return rho_; }
  Complex operator()(int m, int n) const { return rho_(m, n); }

  double population(int n) const { return rho_(n, n).real(); }
  Eigen::VectorXd populations() const { return rho_.diagonal().real(); }
  double mean_photon_number() const;
  // <a> and <a^2>.
  Complex mean_a() const;
  Complex mean_a2() const;

  // Throws InvariantError if any invariant is violated.
  void validate() const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, FockSpace space, CMatrix rho);

  FockSpace space_;
  CMatrix rho_;
};

// Quadrature variances (vacuum = 1/2) of a zero-mean single-mode Gaussian.
struct GaussianVariances {
  double v_min;
  double v_max;

  // dB relative to the vacuum variance; throws PhysicalityError.
  static GaussianVariances from_db(double sq_db, double asq_db);
  void check() const;
  double purity() const;
};

// A[n-1, n] = sqrt(n).
CMatrix annihilation_matrix(const FockSpace& space);
CMatrix creation_matrix(const FockSpace& space);

StateVector fock_state(const FockSpace& space, int n);
StateVector coherent(const FockSpace& space, Complex alpha);
StateVector squeezed_vacuum(const FockSpace& space, double r, double phi);
// Odd cat N(|alpha> - |-alpha>).
StateVector cat_minus(const FockSpace& space, Complex alpha);
DensityMatrix thermal(const FockSpace& space, double nbar);
DensityMatrix squeezed_thermal(const FockSpace& space, const GaussianVariances& v,
                               double phi);
DensityMatrix squeezed_thermal_from_db(const FockSpace& space, double sq_db,
                                       double asq_db, double phi = 0.0);

// exp((conj(xi) a^2 - xi a^dag^2) / 2), xi = r e^{i phi}, evaluated in the
// truncated space by scaling-and-squaring. Exact only away from the cut.
CMatrix squeeze_operator(const FockSpace& space, double r, double phi);

// 1 - sum of the exact populations below kept_levels(). `populations` may be
// longer than the space (untruncated distribution).
double tail_mass(const FockSpace& space, const Eigen::VectorXd& populations,
                 double total = 1.0);
void check_tail(const FockSpace& space, double tail, const char* what);

// Smallest L such that discarding levels >= L changes any linear functional
// bounded by 1 by less than `tol` (trace-norm bound on the dropped blocks).
int effective_dim(const DensityMatrix& rho, double tol = 1e-14);

// Zero-padded copy in a larger space, or renormalized leading block.
DensityMatrix embed(const DensityMatrix& rho, const FockSpace& target);
DensityMatrix truncate(const DensityMatrix& rho, const FockSpace& target);

// exp(i theta n) rho exp(-i theta n).
DensityMatrix rotate(const DensityMatrix& rho, double theta);

}  // namespace pacat
