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

// Python bindings. States cross the boundary as NumPy arrays: complex
// vectors for pure states, complex square matrices for density matrices.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pacat/channels.hpp"
#include "pacat/metrics.hpp"
#include "pacat/pipeline.hpp"
#include "pacat/tomography.hpp"
#include "pacat/wigner.hpp"

namespace py = pybind11;
using namespace pacat;

namespace {

DensityMatrix as_density(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("density matrix must be square");
  return DensityMatrix(FockSpace(int(m.rows())), m);
}

py::dict squeezing_dict(const SqueezingReport& s) {
  py::dict d;
  d["sq_db"] = s.sq_db;
  d["asq_db"] = s.asq_db;
  d["theta_min"] = s.theta_min;
  return d;
}

py::object from_json(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_pacat, m) {
  m.doc() = "Fock-space toolkit for photon-added squeezed states and optical cats";

  auto base = py::register_exception<Error>(m, "PacatError", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ComputationError>(m, "ComputationError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError",
                                          m.attr("ComputationError").ptr());
  py::register_exception<InvariantError>(m, "InvariantError", validation.ptr());

  // constructors
  m.def("coherent", [](int dim, Complex alpha) { return coherent(FockSpace(dim), alpha).amps(); },
        py::arg("dim"), py::arg("alpha"));
  m.def("squeezed_vacuum",
        [](int dim, double r, double phi) { return squeezed_vacuum(FockSpace(dim), r, phi).amps(); },
        py::arg("dim"), py::arg("r"), py::arg("phi") = 0.0);
  m.def("cat_minus", [](int dim, Complex alpha) { return cat_minus(FockSpace(dim), alpha).amps(); },
        py::arg("dim"), py::arg("alpha"));
  m.def("fock", [](int dim, int n) { return DensityMatrix::fock(FockSpace(dim), n).matrix(); },
        py::arg("dim"), py::arg("n"));
  m.def("thermal", [](int dim, double nbar) { return thermal(FockSpace(dim), nbar).matrix(); },
        py::arg("dim"), py::arg("nbar"));
  m.def("squeezed_thermal_from_db",
        [](int dim, double sq, double asq, double phi) {
          return squeezed_thermal_from_db(FockSpace(dim), sq, asq, phi).matrix();
        },
        py::arg("dim"), py::arg("sq_db"), py::arg("asq_db"), py::arg("phi") = 0.0);
  m.def("pure_to_density",
        [](const CVector& psi) {
          return DensityMatrix(StateVector(FockSpace(int(psi.size())), psi)).matrix();
        },
        py::arg("psi"));

  // channels
  m.def("loss", [](const CMatrix& rho, double eta) { return loss(as_density(rho), LossParam(eta)).matrix(); },
        py::arg("rho"), py::arg("eta"));
  m.def("phase_diffusion",
        [](const CMatrix& rho, double sigma) {
          return phase_diffusion(as_density(rho), PhaseNoiseParam(sigma)).matrix();
        },
        py::arg("rho"), py::arg("sigma"));
  m.def("photon_add",
        [](const CMatrix& rho) {
          const auto r = photon_add(as_density(rho));
          return py::make_tuple(r.state.matrix(), r.weight);
        },
        py::arg("rho"), "Returns (normalized state, success weight).");
  m.def("photon_subtract",
        [](const CMatrix& rho) {
          const auto r = photon_subtract(as_density(rho));
          return py::make_tuple(r.state.matrix(), r.weight);
        },
        py::arg("rho"));
  m.def("spdc_herald",
        [](const CMatrix& rho, double g) {
          const auto r = spdc_herald(as_density(rho), SpdcGain(g));
          return py::make_tuple(r.state.matrix(), r.herald_prob);
        },
        py::arg("rho"), py::arg("g"));

  // Wigner
  m.def("wigner_point", [](const CMatrix& rho, double x, double p) { return wigner_point(as_density(rho), x, p); },
        py::arg("rho"), py::arg("x"), py::arg("p"));
  m.def("wigner_origin_parity", [](const CMatrix& rho) { return wigner_origin_parity(as_density(rho)); },
        py::arg("rho"));
  m.def("wigner_grid",
        [](const CMatrix& rho, double half_width, int points) {
          const WignerGrid g = wigner_grid(as_density(rho), half_width, points);
          Eigen::MatrixXd w(g.x_axis.size(), g.p_axis.size());
          for (std::size_t i = 0; i < g.x_axis.size(); ++i)
            for (std::size_t j = 0; j < g.p_axis.size(); ++j) w(i, j) = g.at(i, j);
          return py::make_tuple(g.x_axis, g.p_axis, w);
        },
        py::arg("rho"), py::arg("half_width") = 5.0, py::arg("points") = 201,
        "Returns (x_axis, p_axis, W[x, p]).");

  // metrics
  m.def("purity", [](const CMatrix& rho) { return purity(as_density(rho)); }, py::arg("rho"));
  m.def("fidelity",
        [](const CMatrix& rho, const CMatrix& sigma) { return fidelity(as_density(rho), as_density(sigma)); },
        py::arg("rho"), py::arg("sigma"));
  m.def("squeezing_report",
        [](const CMatrix& rho, int n_theta) { return squeezing_dict(squeezing_report(as_density(rho), n_theta)); },
        py::arg("rho"), py::arg("n_theta") = 16);
  m.def("cat_fit",
        [](const CMatrix& rho, double alpha_max) {
          const CatFitResult r = cat_fit(as_density(rho), alpha_max);
          py::dict d;
          d["alpha"] = r.alpha;
          d["fidelity"] = r.fidelity;
          d["iterations"] = r.iterations;
          return d;
        },
        py::arg("rho"), py::arg("alpha_max") = 3.0);
  m.def("g2_zero", [](const CMatrix& rho) { return g2_zero(as_density(rho)); }, py::arg("rho"));
  m.def("legendre_norm_check",
        [](double xi, int order, int dim) {
          const LegendreCheck c = legendre_norm_check(xi, order, dim);
          return py::make_tuple(c.formula, c.numeric);
        },
        py::arg("xi_mag"), py::arg("m"), py::arg("dim") = 60);

  // tomography
  m.def("quadrature_pdf",
        [](const CMatrix& rho, double theta, double x) { return quadrature_pdf(as_density(rho), theta, x); },
        py::arg("rho"), py::arg("theta"), py::arg("x"));
  m.def("sample_quadratures",
        [](const CMatrix& rho, const std::vector<double>& thetas, int n_per_theta, double efficiency,
           std::uint64_t seed) {
          const QuadratureDataset d =
              sample_quadratures(as_density(rho), thetas, n_per_theta, efficiency, seed);
          Eigen::VectorXd th(d.samples.size()), x(d.samples.size());
          for (std::size_t i = 0; i < d.samples.size(); ++i) {
            th(i) = d.samples[i].theta;
            x(i) = d.samples[i].x;
          }
          return py::make_tuple(th, x);
        },
        py::arg("rho"), py::arg("thetas"), py::arg("n_per_theta"), py::arg("efficiency") = 1.0,
        py::arg("seed") = 0, "Returns (theta, x) arrays.");
  m.def("mle_reconstruct",
        [](const Eigen::VectorXd& theta, const Eigen::VectorXd& x, int dim, int max_iters,
           double stop_tol, double dilution, bool binning, double bin_width) {
          if (theta.size() != x.size()) throw DimensionMismatch("theta and x differ in length");
          QuadratureDataset d;
          d.samples.reserve(theta.size());
          for (Eigen::Index i = 0; i < theta.size(); ++i) d.samples.push_back({theta(i), x(i)});
          MleConfig cfg{dim, max_iters, stop_tol, dilution, binning, bin_width};
          const MleResult r = mle_reconstruct(d, cfg);
          py::dict out;
          out["rho"] = r.state.matrix();
          out["iterations"] = r.iterations;
          out["converged"] = r.converged;
          out["log_likelihood"] = r.log_likelihood;
          return out;
        },
        py::arg("theta"), py::arg("x"), py::arg("dim") = 20, py::arg("max_iters") = 2000,
        py::arg("stop_tol") = 1e-9, py::arg("dilution") = 1.0, py::arg("binning") = false,
        py::arg("bin_width") = 0.05);

  // pipeline
  m.def("simulate",
        [](const std::string& config_json) {
          const auto cfg = ExperimentConfig::from_json(Json::parse(config_json));
          return from_json(report_json(simulate(cfg).reports));
        },
        py::arg("config_json"), "Runs every row of a JSON config; returns the report as a dict.");
}
