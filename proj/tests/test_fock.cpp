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

#include <catch2/catch_amalgamated.hpp>

#include "pacat/fock.hpp"
#include "pacat/metrics.hpp"
#include "support.hpp"

using namespace pacat;
using Catch::Approx;
using pacat::testing::max_abs;

TEST_CASE("FockSpace rejects dim below 2") {
  CHECK_THROWS_AS(FockSpace(1), ValidationError);
  CHECK_THROWS_AS(FockSpace(0), ValidationError);
  CHECK(FockSpace(2).dim() == 2);
  CHECK(FockSpace(40).kept_levels() == 36);
  CHECK(FockSpace(5).kept_levels() == 4);
}

TEST_CASE("annihilation matrix") {
  const CMatrix a2 = annihilation_matrix(FockSpace(2));
  CMatrix expect(2, 2);
  expect << 0, 1, 0, 0;
  CHECK(max_abs(a2 - expect) == 0.0);

  const CMatrix a3 = annihilation_matrix(FockSpace(3));
  CHECK(a3(1, 2).real() == Approx(1.41421).epsilon(1e-5));

  const FockSpace s(12);
  const CMatrix a = annihilation_matrix(s);
  const CMatrix n = creation_matrix(s) * a;
  for (int k = 0; k < s.dim(); ++k) CHECK(std::abs(n(k, k) - double(k)) < 1e-12);
  CHECK(max_abs(creation_matrix(s) - a.adjoint()) == 0.0);
}

TEST_CASE("state vectors are renormalized") {
  const FockSpace s(4);
  CVector v(4);
  v << 1, 1, 0, 0;
  const StateVector psi(s, v);
  CHECK(psi.amps().squaredNorm() == Approx(1.0).margin(1e-15));
  CHECK_THROWS_AS(StateVector(s, CVector::Zero(4)), ValidationError);
  CHECK_THROWS_AS(StateVector(s, CVector::Ones(5)), DimensionMismatch);
}

TEST_CASE("density matrix invariants are enforced") {
  const FockSpace s(3);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix(s, m));
  CMatrix bad_trace = m;
  bad_trace(2, 2) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(s, bad_trace), InvariantError);
  CMatrix non_herm = m;
  non_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(s, non_herm), InvariantError);
  CMatrix negative = CMatrix::Zero(3, 3);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix(s, negative), InvariantError);
  CHECK_THROWS_AS(DensityMatrix(s, CMatrix::Identity(2, 2)), DimensionMismatch);
  CHECK(DensityMatrix::maximally_mixed(s).population(2) == Approx(1.0 / 3));
}

TEST_CASE("coherent states") {
  const FockSpace s(20);
  const StateVector vac = coherent(s, 0.0);
  CHECK(std::abs(vac[0] - 1.0) < 1e-15);

  const StateVector c1 = coherent(s, 1.0);
  CHECK(c1[0].real() == Approx(0.60653).epsilon(1e-5));
  CHECK(c1[0].real() == Approx(std::exp(-0.5)).epsilon(1e-9));

  const StateVector c15 = coherent(FockSpace(40), 1.5);
  CHECK(c15.mean_photon_number() == Approx(2.25).margin(1e-6));

  CHECK_THROWS_AS(coherent(FockSpace(10), 3.0), TruncationError);
}

TEST_CASE("squeezed vacuum closed form") {
  const FockSpace s(40);
  CHECK(std::abs(squeezed_vacuum(s, 0.0, 0.0)[0] - 1.0) < 1e-15);

  const double r = std::atanh(0.5);
  const StateVector sv = squeezed_vacuum(s, r, 0.0);
  CHECK(sv[0].real() == Approx(0.93060).epsilon(1e-5));
  CHECK(sv[2].real() == Approx(-0.32901).epsilon(1e-4));
  CHECK(sv[0].real() == Approx(std::pow(2.0 / std::sqrt(3.0), -0.5)).epsilon(1e-12));
  for (int n = 1; n < s.dim(); n += 2) CHECK(std::abs(sv[n]) == 0.0);

  CHECK(squeezed_vacuum(s, 0.8, 0.3).mean_photon_number() ==
        Approx(std::sinh(0.8) * std::sinh(0.8)).margin(1e-6));
  CHECK(std::sinh(0.8) * std::sinh(0.8) == Approx(0.788732).epsilon(1e-6));

  CHECK_THROWS_AS(squeezed_vacuum(FockSpace(10), 1.5, 0.0), TruncationError);
}

TEST_CASE("squeeze operator reproduces the closed-form vacuum") {
  const FockSpace small(40), big(120);
  for (double r : {0.2, 0.5, 0.75}) {
    for (double phi : {0.0, 1.1, -2.5}) {
      const CMatrix sop = squeeze_operator(big, r, phi);
      // both sides renormalized over the kept levels
      const CVector col = sop.col(0).head(small.dim()).normalized();
      const StateVector closed = squeezed_vacuum(small, r, phi);
      CHECK((col - closed.amps()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("cat_minus") {
  const FockSpace s(40);
  const StateVector c = cat_minus(s, Complex(1.3, 0.4));
  for (int n = 0; n < s.dim(); n += 2) CHECK(std::abs(c[n]) == 0.0);

  const StateVector tiny = cat_minus(s, 1e-3);
  CHECK(fidelity(tiny, fock_state(s, 1)) > 1.0 - 1e-5);

  const double a2 = 4.0;
  CHECK(cat_minus(s, 2.0).mean_photon_number() == Approx(a2 / std::tanh(a2)).margin(1e-9));
  CHECK(a2 / std::tanh(a2) == Approx(4.002685).epsilon(1e-6));

  // Normalization N = [2 (1 - exp(-2|alpha|^2))]^{-1/2} against the
  // coherent-state difference.
  const double alpha = 0.9;
  const CVector diff = coherent(s, alpha).amps() - coherent(s, -alpha).amps();
  const double norm = 1.0 / std::sqrt(2.0 * (1.0 - std::exp(-2.0 * alpha * alpha)));
  CHECK(((norm * diff) - cat_minus(s, alpha).amps()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(cat_minus(s, 0.0), DegenerateCatError);
  CHECK_THROWS_AS(cat_minus(s, 1e-7), DegenerateCatError);
}

TEST_CASE("thermal states") {
  const FockSpace s(40);
  CHECK(thermal(s, 0.0).population(0) == 1.0);
  CHECK(purity(thermal(s, 1.0)) == Approx(1.0 / 3.0).margin(1e-6));
  CHECK(thermal(s, 0.5).population(0) == Approx(2.0 / 3.0).margin(1e-12));
  CHECK_THROWS_AS(thermal(FockSpace(10), 5.0), TruncationError);
  CHECK_THROWS_AS(thermal(s, -0.1), ValidationError);
}

TEST_CASE("Gaussian variances from dB") {
  const auto v = GaussianVariances::from_db(-3.0, 3.0);
  CHECK(v.v_min == Approx(0.5 * std::pow(10.0, -0.3)));
  CHECK(v.v_max == Approx(0.5 * std::pow(10.0, 0.3)));
  CHECK_THROWS_AS(GaussianVariances::from_db(-3.0, 2.0), PhysicalityError);
  CHECK_THROWS_AS(GaussianVariances::from_db(1.0, 2.0), ValidationError);
  CHECK_NOTHROW(GaussianVariances::from_db(0.0, 0.0));
}

TEST_CASE("squeezed thermal purity and round trip") {
  const FockSpace s(40);
  const DensityMatrix vac = squeezed_thermal_from_db(s, 0.0, 0.0);
  CHECK(std::abs(vac(0, 0) - 1.0) < 1e-12);

  CHECK(purity(squeezed_thermal_from_db(s, -3.76, 3.89)) == Approx(0.99).margin(0.01));
  CHECK(purity(squeezed_thermal_from_db(FockSpace(240), -8.89, 15.13)) ==
        Approx(0.49).margin(0.01));

  for (auto [sq, asq] : {std::pair{-3.76, 3.89}, {-1.42, 1.78}, {-3.42, 4.87}, {-2.0, 6.0}}) {
    const auto v = GaussianVariances::from_db(sq, asq);
    CHECK(purity(squeezed_thermal_from_db(FockSpace(60), sq, asq)) ==
          Approx(v.purity()).margin(1e-6));
  }
  CHECK(purity(squeezed_thermal_from_db(s, -4.0, 4.0)) >= 1.0 - 1e-6);
  CHECK_THROWS_AS(squeezed_thermal_from_db(s, -8.89, 15.13), TruncationError);
}

TEST_CASE("squeezed thermal agrees with S rho_th S^dag built by expm") {
  const FockSpace s(40), big(160);
  for (auto [sq, asq, phi] :
       {std::tuple{-3.76, 3.89, 0.0}, {-2.0, 4.5, 0.7}, {-1.42, 1.78, -1.9}}) {
    const auto v = GaussianVariances::from_db(sq, asq);
    const double r = 0.25 * std::log(v.v_max / v.v_min);
    const double nbar = std::sqrt(v.v_min * v.v_max) - 0.5;
    CMatrix th = CMatrix::Zero(big.dim(), big.dim());
    for (int n = 0; n < big.dim(); ++n) th(n, n) = std::pow(nbar, n) / std::pow(nbar + 1, n + 1);
    const CMatrix sop = squeeze_operator(big, r, phi);
    CMatrix oracle = (sop * th * sop.adjoint()).topLeftCorner(s.dim(), s.dim());
    oracle /= oracle.trace().real();
    const DensityMatrix rho = squeezed_thermal_from_db(s, sq, asq, phi);
    CHECK(max_abs(rho.matrix() - oracle) < 1e-10);
  }
}

TEST_CASE("constructor outputs satisfy the invariants") {
  const FockSpace s(40);
  CHECK_NOTHROW(squeezed_thermal_from_db(s, -3.42, 4.87).validate());
  CHECK_NOTHROW(DensityMatrix(squeezed_vacuum(s, 0.7, 2.0)).validate());
  CHECK_NOTHROW(DensityMatrix(cat_minus(s, Complex(0.3, 1.2))).validate());
  CHECK_NOTHROW(thermal(s, 0.8).validate());
  CHECK_NOTHROW(DensityMatrix(coherent(s, Complex(-1, 1))).validate());
}

TEST_CASE("doubling dim leaves scalar metrics unchanged") {
  auto metrics = [](const DensityMatrix& rho) {
    return std::array<double, 3>{purity(rho), rho.mean_photon_number(),
                                 std::abs(rho.mean_a2())};
  };
  auto compare = [&](auto make, int d) {
    const auto a = metrics(make(FockSpace(d)));
    const auto b = metrics(make(FockSpace(2 * d)));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
  };
  compare([](FockSpace s) { return DensityMatrix(coherent(s, 1.0)); }, 20);
  compare([](FockSpace s) { return DensityMatrix(squeezed_vacuum(s, 0.5, 0.0)); }, 40);
  compare([](FockSpace s) { return DensityMatrix(cat_minus(s, 1.2)); }, 30);
  compare([](FockSpace s) { return thermal(s, 0.5); }, 40);
  compare([](FockSpace s) { return squeezed_thermal_from_db(s, -3.76, 3.89); }, 40);
}

TEST_CASE("embed, truncate, rotate") {
  const FockSpace s(10), big(16);
  const DensityMatrix rho(coherent(s, 0.5));
  const DensityMatrix e = embed(rho, big);
  CHECK(e.dim() == 16);
  CHECK(max_abs(e.matrix().topLeftCorner(10, 10) - rho.matrix()) < 1e-15);
  CHECK(max_abs(truncate(e, s).matrix() - rho.matrix()) < 1e-15);

  // exp(i theta n) |alpha> = |alpha e^{i theta}>
  const DensityMatrix rot = rotate(rho, 0.4);
  const DensityMatrix expect(coherent(s, 0.5 * std::polar(1.0, 0.4)));
  CHECK(max_abs(rot.matrix() - expect.matrix()) < 1e-12);
  CHECK_THROWS_AS(require_same_space(s, big), DimensionMismatch);
}

TEST_CASE("effective_dim bounds the dropped weight") {
  const FockSpace s(60);
  const DensityMatrix rho(coherent(s, 1.0));
  const int l = effective_dim(rho, 1e-13);
  CHECK(l < 40);
  double t = 0.0;
  for (int n = l; n < s.dim(); ++n) t += rho.population(n);
  CHECK(t + 2 * std::sqrt(t) < 1e-13);
  CHECK(effective_dim(DensityMatrix::maximally_mixed(s), 1e-13) == s.dim());
}
