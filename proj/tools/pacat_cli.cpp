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

// pacat: command line front end for the simulation pipeline.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "pacat/errors.hpp"
#include "pacat/io.hpp"
#include "pacat/pipeline.hpp"
#include "pacat/wigner.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

fs::path output_dir(const std::string& flag, const pacat::ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  throw pacat::ValidationError("no output directory: pass --out or set output_dir");
}

int cmd_simulate(const std::string& config, const std::string& out) {
  const auto cfg = pacat::ExperimentConfig::load(config);
  const auto sim = pacat::simulate(cfg);
  const auto dir = output_dir(out, cfg);
  const auto files = pacat::export_artifacts(sim, dir);
  std::cout << pacat::format_report_table(sim.reports);
  std::cout << "wrote " << files.size() << " files to " << dir.string() << "\n";
  for (const auto& r : sim.reports)
    if (!r.ok) return kExitRuntime;
  return 0;
}

int cmd_wigner(const std::string& state, const std::string& out, double range, int points) {
  const auto rho = pacat::density_from_json(pacat::read_json_file(state));
  const auto grid = pacat::wigner_grid(rho, range, points);
  const fs::path csv(out);
  pacat::write_text_file(csv, pacat::wigner_csv(grid));
  fs::path sidecar = csv;
  sidecar.replace_extension(".json");
  pacat::write_json_file(sidecar, pacat::wigner_sidecar(grid));
  const auto neg = pacat::negativity_metrics(grid);
  std::printf("min W = %.6f  negative volume = %.6f\n", neg.min_value, neg.negative_volume);
  return 0;
}

int cmd_tomo(const std::string& config, const std::string& out) {
  const auto cfg = pacat::ExperimentConfig::load(config);
  const auto run = pacat::run_tomography_check(cfg);
  const auto dir = output_dir(out, cfg);
  pacat::export_tomography(run, dir);
  int status = 0;
  std::printf("%-10s %8s %6s %9s %9s %9s %9s\n", "row", "samples", "iters", "F", "F_det",
              "W00_true", "W00_mle");
  for (const auto& r : run.reports) {
    if (!r.ok) {
      std::printf("%-10s FAILED: %s\n", r.label.c_str(), r.error.c_str());
      status = kExitRuntime;
      continue;
    }
    std::printf("%-10s %8d %6d %9.4f %9.4f %9.4f %9.4f\n", r.label.c_str(), r.samples,
                r.iterations, r.fidelity, r.fidelity_detected, r.w00_truth, r.w00_reconstructed);
  }
  return status;
}

int cmd_report(const std::string& in) {
  const fs::path dir(in);
  const auto reports = pacat::reports_from_json(pacat::read_json_file(dir / "report.json"));
  std::cout << pacat::format_report_table(reports);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-added squeezed states and optical cat toolkit"};
  app.require_subcommand(1);

  std::string config, out, state, in;
  double range = 5.0;
  int points = 201;

  auto* sim = app.add_subcommand("simulate", "run every configured row and export artifacts");
  sim->add_option("--config", config, "experiment JSON")->required();
  sim->add_option("--out", out, "output directory (defaults to config output_dir)");

  auto* wig = app.add_subcommand("wigner", "evaluate a Wigner grid for a state JSON");
  wig->add_option("--state", state, "state or density-matrix JSON")->required();
  wig->add_option("--out", out, "grid CSV path")->required();
  wig->add_option("--range", range, "half width of the square grid");
  wig->add_option("--points", points, "points per axis");

  auto* tomo = app.add_subcommand("tomo", "sample, reconstruct and compare");
  tomo->add_option("--config", config, "experiment JSON")->required();
  tomo->add_option("--out", out, "output directory (defaults to config output_dir)");

  auto* rep = app.add_subcommand("report", "print report.json from a simulate run");
  rep->add_option("--in", in, "directory written by simulate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(config, out);
    if (*wig) return cmd_wigner(state, out, range, points);
    if (*tomo) return cmd_tomo(config, out);
    return cmd_report(in);
  } catch (const pacat::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
