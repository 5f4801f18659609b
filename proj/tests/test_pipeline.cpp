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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pacat/pipeline.hpp"
#include "support.hpp"

using namespace pacat;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

Json small_config() {
  return Json::parse(R"({
    "dim": 40,
    "seed": 5,
    "wigner": {"range": 4.0, "points": 41},
    "rows": [
      {"label": "r1", "opo_sq_db": -3.76, "opo_asq_db": 3.89, "empty_sq_db": -0.33, "empty_asq_db": 0.50},
      {"label": "r2", "opo_sq_db": -6.27, "opo_asq_db": 7.31, "empty_sq_db": -1.42, "empty_asq_db": 1.78},
      {"label": "r3", "opo_sq_db": -3.0, "opo_asq_db": 4.0, "empty_sq_db": -3.42, "empty_asq_db": 4.87},
      {"label": "flat", "opo_sq_db": 0, "opo_asq_db": 0, "empty_sq_db": 0, "empty_asq_db": 0}
    ]
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing is strict") {
  CHECK_NOTHROW(ExperimentConfig::from_json(small_config()));
  Json j = small_config();
  j["typo"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["rows"][0]["opo_sq_dB"] = -3.0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["dim"] = 1;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["dim"] = 40.5;
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["rows"][0]["opo_asq_db"] = 1.0;  // below the uncertainty bound
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), PhysicalityError);
  j = small_config();
  j["rows"][1]["label"] = "r1";
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["rows"][1]["label"] = "bad label";
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["efficiency"] = "high";
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["tomography"] = {{"samples", 0}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
  j = small_config();
  j["tomography"] = {{"rows", {"nope"}}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(j), ValidationError);
}

TEST_CASE("simulate reports every row") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(small_config());
  const Simulation sim = simulate(cfg);
  REQUIRE(sim.reports.size() == 4);
  for (const auto& r : sim.reports) {
    CHECK(r.ok);
    for (double v : {r.purity_opo, r.purity_empty, r.purity_add, r.purity_det, r.f_cat,
                     r.f_cat_det, r.f_sq_add}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-9);
    }
  }
  CHECK(sim.reports[0].purity_opo == Approx(0.99).margin(0.01));
  CHECK(sim.reports[0].opo_roundtrip.sq_db == Approx(-3.76).margin(1e-3));
  CHECK(sim.reports[0].empty_roundtrip.asq_db == Approx(0.50).margin(1e-3));
  for (int i = 0; i < 3; ++i) CHECK(sim.reports[i].w00 < 0);
  CHECK(sim.reports[0].cat_alpha < sim.reports[1].cat_alpha);

  // ideal vacuum input: the added state is |1>
  const RowReport& flat = sim.reports[3];
  CHECK(flat.purity_add == Approx(1.0).margin(1e-12));
  CHECK(flat.w00 == Approx(-1 / testing::kPi).margin(1e-12));
  CHECK(flat.cat_alpha == Approx(kCatAlphaMin).margin(1e-9));
  CHECK(flat.add_weight == Approx(1.0).margin(1e-12));
}

TEST_CASE("ideal detection makes rho_det equal rho_add") {
  Json j = small_config();
  j["efficiency"] = 1.0;
  j["phase_noise_mrad"] = 0.0;
  const Simulation sim = simulate(ExperimentConfig::from_json(j));
  for (const auto& r : sim.reports) CHECK(r.f_sq_add == Approx(1.0).margin(1e-9));
}

TEST_CASE("a failing row does not stop the others") {
  Json j = small_config();
  j["dim"] = 8;  // too small for the squeezed rows
  const Simulation sim = simulate(ExperimentConfig::from_json(j));
  CHECK_FALSE(sim.reports[1].ok);
  CHECK_FALSE(sim.reports[1].error.empty());
  CHECK(sim.reports[3].ok);
  CHECK_FALSE(sim.artifacts[1].grid.has_value());
  CHECK(sim.artifacts[3].grid.has_value());
}

TEST_CASE("report JSON round trip and export layout") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(small_config());
  const Simulation sim = simulate(cfg);
  CHECK(reports_from_json(Json::parse(report_json(sim.reports).dump())) == sim.reports);

  const fs::path dir = fs::temp_directory_path() / "pacat_pipeline_export";
  fs::remove_all(dir);
  const auto files = export_artifacts(sim, dir);
  int grids = 0, csv = 0, json = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with("_wigner.csv")) ++grids;
    if (name == "report.csv") ++csv;
    if (name == "report.json") ++json;
  }
  CHECK(grids == 4);
  CHECK(csv == 1);
  CHECK(json == 1);
  CHECK(files.size() == 2 + 4 * 4);
  CHECK(fs::exists(dir / "r2_rho_add.json"));
  CHECK(fs::exists(dir / "r2_rho_det.json"));
  CHECK(fs::exists(dir / "r2_wigner.json"));
  const DensityMatrix back = density_from_json(read_json_file(dir / "r2_rho_add.json"));
  CHECK(back.matrix() == sim.artifacts[1].rho_add->matrix());
  CHECK(slurp(dir / "report.csv").starts_with("label,ok,purity_opo"));

  const fs::path again = fs::temp_directory_path() / "pacat_pipeline_export_2";
  fs::remove_all(again);
  export_artifacts(simulate(cfg), again);
  CHECK(slurp(dir / "report.json") == slurp(again / "report.json"));

  const std::string table = format_report_table(sim.reports);
  CHECK(table.find("r2") != std::string::npos);
}

TEST_CASE("tomography check") {
  Json j = small_config();
  j["tomography"] = {{"samples", 24000}, {"dim", 14}, {"rows", {"r1"}}};
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  const TomographyRun run = run_tomography_check(cfg);
  REQUIRE(run.reports.size() == 1);
  const TomographyRowReport& r = run.reports[0];
  CHECK(r.ok);
  CHECK(r.label == "r1");
  CHECK(r.samples == 24000);
  CHECK(r.likelihood_monotone);
  CHECK(r.fidelity > 0.95);
  CHECK(r.w00_reconstructed < 0);

  const TomographyRun again = run_tomography_check(cfg);
  CHECK(to_json(again.reports[0]).dump() == to_json(r).dump());

  const fs::path dir = fs::temp_directory_path() / "pacat_pipeline_tomo";
  fs::remove_all(dir);
  export_tomography(run, dir);
  CHECK(fs::exists(dir / "r1_quadratures.csv"));
  CHECK(fs::exists(dir / "r1_quadratures.json"));
  CHECK(fs::exists(dir / "r1_rho_mle.json"));
  CHECK(fs::exists(dir / "tomography.json"));

  CHECK_THROWS_AS(run_tomography_check(ExperimentConfig::from_json(small_config())),
                  ValidationError);
}
