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

#include "pacat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <iomanip>
#include <regex>
#include <set>
#include <sstream>

#include "pacat/channels.hpp"
#include "pacat/tomography.hpp"

namespace pacat {

namespace {

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

double number(const Json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where + "." + key + ": not finite");
  return d;
}

double required_number(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
  return number(obj, key, 0.0, where);
}

long long integer(const Json& obj, const char* key, long long fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(where + "." + key + ": expected an integer");
  return v.get<long long>();
}

bool boolean(const Json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_boolean()) throw ValidationError(where + "." + key + ": expected true/false");
  return v.get<bool>();
}

std::string string(const Json& obj, const char* key, const std::string& fallback,
                   const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

Json squeezing_json(const SqueezingReport& s) {
  return Json{{"sq_db", s.sq_db}, {"asq_db", s.asq_db}, {"theta_min", s.theta_min}};
}

SqueezingReport squeezing_from_json(const Json& j) {
  return {j.at("sq_db").get<double>(), j.at("asq_db").get<double>(),
          j.at("theta_min").get<double>()};
}

const RowSpec* find_row(const ExperimentConfig& cfg, const std::string& label) {
  for (const auto& r : cfg.rows)
    if (r.label == label) return &r;
  return nullptr;
}

RowReport evaluate_row(const RowSpec& row, const ExperimentConfig& cfg, RowArtifacts& art) {
  RowReport rep;
  rep.label = row.label;
  const RowStates st = build_row_states(row, cfg);
  rep.purity_opo = purity(st.opo);
  rep.purity_empty = purity(st.empty);
  rep.purity_add = purity(st.add);
  rep.purity_det = purity(st.det);
  rep.add_weight = st.add_weight;
  rep.w00 = wigner_origin_parity(st.add);
  rep.w00_det = wigner_origin_parity(st.det);

  const CatFitResult fit = cat_fit(st.add, cfg.cat_alpha_max);
  rep.f_cat = fit.fidelity;
  rep.cat_alpha = std::abs(fit.alpha);
  rep.cat_phase = std::arg(fit.alpha);
  rep.f_cat_det = fidelity(StateVector(st.add.space(), cat_minus_amplitudes(st.add.space(), fit.alpha)),
                           st.det);
  rep.f_sq_add = fidelity(st.det, st.add);
  rep.opo_roundtrip = squeezing_report(st.opo);
  rep.empty_roundtrip = squeezing_report(st.empty);

  WignerGrid grid = wigner_grid(st.add, cfg.wigner.range, cfg.wigner.points);
  const NegativityMetrics neg = negativity_metrics(grid);
  rep.wigner_min = neg.min_value;
  rep.negative_volume = neg.negative_volume;

  art.rho_add = st.add;
  art.rho_det = st.det;
  art.grid = std::move(grid);
  return rep;
}

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  const std::string where = "config";
  check_keys(j,
             {"rows", "dim", "phase_noise_mrad", "efficiency", "cat_alpha_max", "wigner",
              "tomography", "output_dir", "seed"},
             where);
  ExperimentConfig cfg;
  cfg.dim = int(integer(j, "dim", cfg.dim, where));
  cfg.phase_noise_mrad = number(j, "phase_noise_mrad", cfg.phase_noise_mrad, where);
  cfg.efficiency = number(j, "efficiency", cfg.efficiency, where);
  cfg.cat_alpha_max = number(j, "cat_alpha_max", cfg.cat_alpha_max, where);
  cfg.output_dir = string(j, "output_dir", "", where);
  const long long seed = integer(j, "seed", 0, where);
  if (seed < 0) throw ValidationError("config.seed: must be >= 0");
  cfg.seed = std::uint64_t(seed);

  if (j.contains("wigner")) {
    const Json& w = j.at("wigner");
    check_keys(w, {"range", "points"}, "config.wigner");
    cfg.wigner.range = number(w, "range", cfg.wigner.range, "config.wigner");
    cfg.wigner.points = int(integer(w, "points", cfg.wigner.points, "config.wigner"));
  }

  if (!j.contains("rows") || !j.at("rows").is_array()) {
    throw ValidationError("config: 'rows' must be an array");
  }
  for (std::size_t i = 0; i < j.at("rows").size(); ++i) {
    const Json& r = j.at("rows")[i];
    const std::string rw = "config.rows[" + std::to_string(i) + "]";
    check_keys(r, {"label", "opo_sq_db", "opo_asq_db", "empty_sq_db", "empty_asq_db"}, rw);
    RowSpec row;
    row.label = string(r, "label", "", rw);
    row.opo_sq_db = required_number(r, "opo_sq_db", rw);
    row.opo_asq_db = required_number(r, "opo_asq_db", rw);
    row.empty_sq_db = required_number(r, "empty_sq_db", rw);
    row.empty_asq_db = required_number(r, "empty_asq_db", rw);
    cfg.rows.push_back(std::move(row));
  }

  if (j.contains("tomography")) {
    const Json& t = j.at("tomography");
    const std::string tw = "config.tomography";
    check_keys(t,
               {"samples", "phases", "dim", "efficiency", "max_iters", "stop_tol", "dilution",
                "binning", "rows"},
               tw);
    TomographySpec spec;
    spec.samples = int(integer(t, "samples", spec.samples, tw));
    spec.phases = int(integer(t, "phases", spec.phases, tw));
    spec.dim = int(integer(t, "dim", spec.dim, tw));
    spec.efficiency = number(t, "efficiency", spec.efficiency, tw);
    spec.max_iters = int(integer(t, "max_iters", spec.max_iters, tw));
    spec.stop_tol = number(t, "stop_tol", spec.stop_tol, tw);
    spec.dilution = number(t, "dilution", spec.dilution, tw);
    spec.binning = boolean(t, "binning", spec.binning, tw);
    if (t.contains("rows")) {
      if (!t.at("rows").is_array()) throw ValidationError(tw + ".rows: expected an array");
      for (const auto& l : t.at("rows")) {
        if (!l.is_string()) throw ValidationError(tw + ".rows: expected labels");
        spec.rows.push_back(l.get<std::string>());
      }
    }
    cfg.tomography = std::move(spec);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

void ExperimentConfig::validate() const {
  if (dim < 2) throw ValidationError("config.dim must be >= 2");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw ValidationError("config.efficiency must lie in (0, 1]");
  }
  if (!(phase_noise_mrad >= 0.0)) throw ValidationError("config.phase_noise_mrad must be >= 0");
  if (!(cat_alpha_max > kCatAlphaMin)) throw ValidationError("config.cat_alpha_max too small");
  if (!(wigner.range > 0.0) || wigner.points < 2) {
    throw ValidationError("config.wigner needs range > 0 and points >= 2");
  }
  if (rows.empty()) throw ValidationError("config.rows is empty");
  static const std::regex label_re("[A-Za-z0-9_.-]+");
  std::set<std::string> seen;
  for (const auto& r : rows) {
    if (!std::regex_match(r.label, label_re)) {
      throw ValidationError("row label '" + r.label + "' must match [A-Za-z0-9_.-]+");
    }
    if (!seen.insert(r.label).second) throw ValidationError("duplicate row label " + r.label);
    GaussianVariances::from_db(r.opo_sq_db, r.opo_asq_db);
    GaussianVariances::from_db(r.empty_sq_db, r.empty_asq_db);
  }
  if (tomography) {
    const auto& t = *tomography;
    if (t.phases < 1) throw ValidationError("config.tomography.phases must be >= 1");
    if (t.samples < 100) {
      throw ValidationError("config.tomography.samples must be >= 100, got " +
                            std::to_string(t.samples));
    }
    if (!(t.efficiency > 0.0 && t.efficiency <= 1.0)) {
      throw ValidationError("config.tomography.efficiency must lie in (0, 1]");
    }
    MleConfig mc{t.dim, t.max_iters, t.stop_tol, t.dilution, t.binning};
    mc.validate();
    for (const auto& l : t.rows) {
      if (!find_row(*this, l)) throw ValidationError("config.tomography.rows: unknown row " + l);
    }
  }
}

RowStates build_row_states(const RowSpec& row, const ExperimentConfig& cfg) {
  const FockSpace space(cfg.dim);
  DensityMatrix opo = squeezed_thermal_from_db(space, row.opo_sq_db, row.opo_asq_db);
  DensityMatrix empty = squeezed_thermal_from_db(space, row.empty_sq_db, row.empty_asq_db);
  ConditionalState added = photon_add(empty);
  DensityMatrix det =
      loss(phase_diffusion(added.state, PhaseNoiseParam::from_mrad(cfg.phase_noise_mrad)),
           LossParam(cfg.efficiency));
  return {std::move(opo), std::move(empty), std::move(added.state), std::move(det), added.weight};
}

Simulation simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  Simulation sim;
  sim.reports.resize(cfg.rows.size());
  sim.artifacts.resize(cfg.rows.size());
  for (std::size_t i = 0; i < cfg.rows.size(); ++i) {
    try {
      sim.reports[i] = evaluate_row(cfg.rows[i], cfg, sim.artifacts[i]);
    } catch (const Error& e) {
      sim.reports[i] = RowReport{};
      sim.reports[i].label = cfg.rows[i].label;
      sim.reports[i].ok = false;
      sim.reports[i].error = e.what();
      sim.artifacts[i] = RowArtifacts{};
    }
  }
  return sim;
}

Json to_json(const RowReport& r) {
  return Json{{"label", r.label},
              {"ok", r.ok},
              {"error", r.error},
              {"purity_opo", r.purity_opo},
              {"purity_empty", r.purity_empty},
              {"purity_add", r.purity_add},
              {"purity_det", r.purity_det},
              {"add_weight", r.add_weight},
              {"w00", r.w00},
              {"w00_det", r.w00_det},
              {"f_cat", r.f_cat},
              {"f_cat_det", r.f_cat_det},
              {"cat_alpha", r.cat_alpha},
              {"cat_phase", r.cat_phase},
              {"f_sq_add", r.f_sq_add},
              {"opo_roundtrip", squeezing_json(r.opo_roundtrip)},
              {"empty_roundtrip", squeezing_json(r.empty_roundtrip)},
              {"wigner_min", r.wigner_min},
              {"negative_volume", r.negative_volume}};
}

RowReport row_report_from_json(const Json& j) {
  try {
    RowReport r;
    r.label = j.at("label").get<std::string>();
    r.ok = j.at("ok").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.purity_opo = j.at("purity_opo").get<double>();
    r.purity_empty = j.at("purity_empty").get<double>();
    r.purity_add = j.at("purity_add").get<double>();
    r.purity_det = j.at("purity_det").get<double>();
    r.add_weight = j.at("add_weight").get<double>();
    r.w00 = j.at("w00").get<double>();
    r.w00_det = j.at("w00_det").get<double>();
    r.f_cat = j.at("f_cat").get<double>();
    r.f_cat_det = j.at("f_cat_det").get<double>();
    r.cat_alpha = j.at("cat_alpha").get<double>();
    r.cat_phase = j.at("cat_phase").get<double>();
    r.f_sq_add = j.at("f_sq_add").get<double>();
    r.opo_roundtrip = squeezing_from_json(j.at("opo_roundtrip"));
    r.empty_roundtrip = squeezing_from_json(j.at("empty_roundtrip"));
    r.wigner_min = j.at("wigner_min").get<double>();
    r.negative_volume = j.at("negative_volume").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed row report: ") + e.what());
  }
}

Json report_json(const std::vector<RowReport>& reports) {
  Json rows = Json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  return Json{{"rows", rows}};
}

std::vector<RowReport> reports_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array()) {
    throw ValidationError("report JSON needs a 'rows' array");
  }
  std::vector<RowReport> out;
  for (const auto& r : j.at("rows")) out.push_back(row_report_from_json(r));
  return out;
}

std::string report_csv(const std::vector<RowReport>& reports) {
  std::ostringstream os;
  os << "label,ok,purity_opo,purity_empty,purity_add,purity_det,add_weight,w00,w00_det,f_cat,"
        "f_cat_det,cat_alpha,cat_phase,f_sq_add,opo_sq_db,opo_asq_db,empty_sq_db,empty_asq_db,"
        "wigner_min,negative_volume\n";
  for (const auto& r : reports) {
    os << r.label << ',' << (r.ok ? 1 : 0);
    for (double v : {r.purity_opo, r.purity_empty, r.purity_add, r.purity_det, r.add_weight, r.w00,
                     r.w00_det, r.f_cat, r.f_cat_det, r.cat_alpha, r.cat_phase, r.f_sq_add,
                     r.opo_roundtrip.sq_db, r.opo_roundtrip.asq_db, r.empty_roundtrip.sq_db,
                     r.empty_roundtrip.asq_db, r.wigner_min, r.negative_volume}) {
      os << ',' << fmt17(v);
    }
    os << '\n';
  }
  return os.str();
}

std::string format_report_table(const std::vector<RowReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %9s %9s %9s %9s %9s %9s %9s %9s %9s\n", "row", "P(opo)",
                "P(empty)", "P(add)", "P(det)", "W(0,0)", "F_cat", "F_sq_add", "|alpha|",
                "SQ:ASQ");
  os << line;
  for (const auto& r : reports) {
    if (!r.ok) {
      os << std::left << std::setw(10) << r.label << " FAILED: " << r.error << '\n';
      continue;
    }
    char sq[32];
    std::snprintf(sq, sizeof sq, "%.2f:%.2f", r.opo_roundtrip.sq_db, r.opo_roundtrip.asq_db);
    std::snprintf(line, sizeof line,
                  "%-10s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %9s\n", r.label.c_str(),
                  r.purity_opo, r.purity_empty, r.purity_add, r.purity_det, r.w00, r.f_cat,
                  r.f_sq_add, r.cat_alpha, sq);
    os << line;
  }
  return os.str();
}

std::vector<std::filesystem::path> export_artifacts(const Simulation& sim,
                                                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit_json = [&](const std::string& name, const Json& j) {
    write_json_file(dir / name, j);
    written.push_back(dir / name);
  };
  auto emit_text = [&](const std::string& name, const std::string& text) {
    write_text_file(dir / name, text);
    written.push_back(dir / name);
  };
  emit_text("report.csv", report_csv(sim.reports));
  emit_json("report.json", report_json(sim.reports));
  for (std::size_t i = 0; i < sim.reports.size(); ++i) {
    const std::string& label = sim.reports[i].label;
    const RowArtifacts& art = sim.artifacts[i];
    if (art.grid) {
      emit_text(label + "_wigner.csv", wigner_csv(*art.grid));
      emit_json(label + "_wigner.json", wigner_sidecar(*art.grid));
    }
    if (art.rho_add) emit_json(label + "_rho_add.json", to_json(*art.rho_add));
    if (art.rho_det) emit_json(label + "_rho_det.json", to_json(*art.rho_det));
  }
  return written;
}

Json to_json(const TomographyRowReport& r) {
  return Json{{"label", r.label},
              {"ok", r.ok},
              {"error", r.error},
              {"samples", r.samples},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"likelihood_monotone", r.likelihood_monotone},
              {"final_log_likelihood", r.final_log_likelihood},
              {"fidelity", r.fidelity},
              {"fidelity_detected", r.fidelity_detected},
              {"w00_truth", r.w00_truth},
              {"w00_reconstructed", r.w00_reconstructed}};
}

TomographyRun run_tomography_check(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.tomography) throw ValidationError("config has no 'tomography' section");
  const TomographySpec& spec = *cfg.tomography;

  TomographyRun run;
  for (std::size_t i = 0; i < cfg.rows.size(); ++i) {
    const RowSpec& row = cfg.rows[i];
    if (!spec.rows.empty() &&
        std::find(spec.rows.begin(), spec.rows.end(), row.label) == spec.rows.end()) {
      continue;
    }
    TomographyRowReport rep;
    rep.label = row.label;
    std::optional<QuadratureDataset> data;
    std::optional<DensityMatrix> recon;
    try {
      const RowStates st = build_row_states(row, cfg);
      // At least the requested total, split evenly.
      const int per_phase = (spec.samples + spec.phases - 1) / spec.phases;
      const std::uint64_t seed = cfg.seed + 1000003ull * i;
      data = sample_quadratures(st.add, default_phases(spec.phases), per_phase, spec.efficiency,
                                seed);
      MleConfig mc{spec.dim, spec.max_iters, spec.stop_tol, spec.dilution, spec.binning};
      const MleResult mle = mle_reconstruct(*data, mc);
      recon = mle.state;

      rep.samples = int(data->samples.size());
      rep.iterations = mle.iterations;
      rep.converged = mle.converged;
      rep.likelihood_monotone = true;
      for (std::size_t k = 1; k < mle.log_likelihood.size(); ++k) {
        if (mle.log_likelihood[k] < mle.log_likelihood[k - 1] - 1e-9) rep.likelihood_monotone = false;
      }
      rep.final_log_likelihood = mle.log_likelihood.back();
      const DensityMatrix placed = embed(mle.state, st.add.space());
      rep.fidelity = fidelity(placed, st.add);
      rep.fidelity_detected = fidelity(placed, loss(st.add, LossParam(spec.efficiency)));
      rep.w00_truth = wigner_origin_parity(st.add);
      rep.w00_reconstructed = wigner_origin_parity(mle.state);
    } catch (const Error& e) {
      rep.ok = false;
      rep.error = e.what();
    }
    run.reports.push_back(std::move(rep));
    run.datasets.push_back(std::move(data));
    run.reconstructions.push_back(std::move(recon));
  }
  return run;
}

std::vector<std::filesystem::path> export_tomography(const TomographyRun& run,
                                                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  Json rows = Json::array();
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    const std::string& label = run.reports[i].label;
    rows.push_back(to_json(run.reports[i]));
    if (run.datasets[i]) {
      write_text_file(dir / (label + "_quadratures.csv"), dataset_csv(*run.datasets[i]));
      write_json_file(dir / (label + "_quadratures.json"), dataset_sidecar(*run.datasets[i]));
      written.push_back(dir / (label + "_quadratures.csv"));
      written.push_back(dir / (label + "_quadratures.json"));
    }
    if (run.reconstructions[i]) {
      write_json_file(dir / (label + "_rho_mle.json"), to_json(*run.reconstructions[i]));
      written.push_back(dir / (label + "_rho_mle.json"));
    }
  }
  write_json_file(dir / "tomography.json", Json{{"rows", rows}});
  written.push_back(dir / "tomography.json");
  return written;
}

}  // namespace pacat
