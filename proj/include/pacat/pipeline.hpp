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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pacat/io.hpp"
#include "pacat/metrics.hpp"
#include "pacat/wigner.hpp"

namespace pacat {

// One measured operating point: squeezing levels right after the OPO and
// after the empty down-conversion cavity.
struct RowSpec {
  std::string label;
  double opo_sq_db = 0.0;
  double opo_asq_db = 0.0;
  double empty_sq_db = 0.0;
  double empty_asq_db = 0.0;
};

struct WignerSpec {
  double range = 5.0;
  int points = 201;
};

struct TomographySpec {
  int samples = 200000;  // total, rounded up to a multiple of phases
  int phases = 12;
  int dim = 20;
  double efficiency = 1.0;
  int max_iters = 2000;
  double stop_tol = 1e-9;
  double dilution = 1.0;
  bool binning = false;
  std::vector<std::string> rows;  // empty: every row
};

struct ExperimentConfig {
  std::vector<RowSpec> rows;
  int dim = kDefaultDim;
  double phase_noise_mrad = 34.5;
  double efficiency = 0.822;
  double cat_alpha_max = 3.0;
  WignerSpec wigner;
  std::optional<TomographySpec> tomography;
  std::string output_dir;
  std::uint64_t seed = 0;

  // Strict schema: unknown keys, wrong types and unphysical rows are
  // ValidationErrors.
  static ExperimentConfig from_json(const Json& j);
  static ExperimentConfig load(const std::filesystem::path& path);
  void validate() const;
};

struct RowReport {
  std::string label;
  bool ok = true;
  std::string error;

  double purity_opo = 0.0;
  double purity_empty = 0.0;
  double purity_add = 0.0;
  double purity_det = 0.0;
  double add_weight = 0.0;  // Tr(a^dag rho a) before normalization
  double w00 = 0.0;
  double w00_det = 0.0;
  double f_cat = 0.0;
  double f_cat_det = 0.0;
  double cat_alpha = 0.0;  // |alpha| of the best odd cat
  double cat_phase = 0.0;
  double f_sq_add = 0.0;  // F(rho_det, rho_add)
  SqueezingReport opo_roundtrip{};
  SqueezingReport empty_roundtrip{};
  double wigner_min = 0.0;
  double negative_volume = 0.0;

  friend bool operator==(const RowReport&, const RowReport&) = default;
};

Json to_json(const RowReport& r);
RowReport row_report_from_json(const Json& j);

struct RowStates {
  DensityMatrix opo;
  DensityMatrix empty;
  DensityMatrix add;  // a^dag rho_empty a, normalized
  DensityMatrix det;  // add after phase diffusion and detection loss
  double add_weight;
};

RowStates build_row_states(const RowSpec& row, const ExperimentConfig& cfg);

struct RowArtifacts {
  std::optional<DensityMatrix> rho_add;
  std::optional<DensityMatrix> rho_det;
  std::optional<WignerGrid> grid;
};

struct Simulation {
  std::vector<RowReport> reports;
  std::vector<RowArtifacts> artifacts;
};

// Row failures are recorded in the report (ok = false) and do not stop the
// remaining rows.
Simulation simulate(const ExperimentConfig& cfg);

struct TomographyRowReport {
  std::string label;
  bool ok = true;
  std::string error;
  int samples = 0;
  int iterations = 0;
  bool converged = false;
  bool likelihood_monotone = false;
  double final_log_likelihood = 0.0;
  double fidelity = 0.0;           // vs rho_add
  double fidelity_detected = 0.0;  // vs loss(rho_add, efficiency)
  double w00_truth = 0.0;
  double w00_reconstructed = 0.0;
};

struct TomographyRun {
  std::vector<TomographyRowReport> reports;
  std::vector<std::optional<QuadratureDataset>> datasets;
  std::vector<std::optional<DensityMatrix>> reconstructions;
};

Json to_json(const TomographyRowReport& r);

// Requires cfg.tomography.
TomographyRun run_tomography_check(const ExperimentConfig& cfg);

// report.csv, report.json and, per row, {label}_wigner.csv (+ .json
// sidecar), {label}_rho_add.json, {label}_rho_det.json.
std::vector<std::filesystem::path> export_artifacts(const Simulation& sim,
                                                    const std::filesystem::path& dir);
std::vector<std::filesystem::path> export_tomography(const TomographyRun& run,
                                                     const std::filesystem::path& dir);

Json report_json(const std::vector<RowReport>& reports);
std::vector<RowReport> reports_from_json(const Json& j);
std::string report_csv(const std::vector<RowReport>& reports);
// Fixed-width table for terminals.
std::string format_report_table(const std::vector<RowReport>& reports);

}  // namespace pacat
