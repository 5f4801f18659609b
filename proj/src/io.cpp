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

#include "pacat/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pacat {

namespace {

Json real_rows(const CMatrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(imag ? m(i, k).imag() : m(i, k).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

int read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw ValidationError("state JSON needs keys dim, re, im");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "dim" && key != "re" && key != "im") {
      throw ValidationError("unknown key '" + key + "' in state JSON");
    }
  }
  return j.at("dim").get<int>();
}

CVector read_vector(const Json& re, const Json& im, int dim) {
  if (!re.is_array() || !im.is_array() || int(re.size()) != dim || int(im.size()) != dim) {
    throw ValidationError("state JSON vector length does not match dim");
  }
  CVector v(dim);
  for (int n = 0; n < dim; ++n) v(n) = Complex(re[n].get<double>(), im[n].get<double>());
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

Json to_json(const DensityMatrix& rho) {
  return Json{{"dim", rho.dim()},
              {"re", real_rows(rho.matrix(), false)},
              {"im", real_rows(rho.matrix(), true)}};
}

Json to_json(const StateVector& psi) {
  Json re = Json::array(), im = Json::array();
  for (int n = 0; n < psi.dim(); ++n) {
    re.push_back(psi[n].real());
    im.push_back(psi[n].imag());
  }
  return Json{{"dim", psi.dim()}, {"re", re}, {"im", im}};
}

DensityMatrix density_from_json(const Json& j) {
  try {
    const int dim = read_dim(j);
    const FockSpace space(dim);
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (re.is_array() && !re.empty() && !re[0].is_array()) {
      return DensityMatrix(StateVector(space, read_vector(re, im, dim)));
    }
    if (!re.is_array() || !im.is_array() || int(re.size()) != dim || int(im.size()) != dim) {
      throw ValidationError("state JSON matrix row count does not match dim");
    }
    CMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) m.row(r) = read_vector(re[r], im[r], dim).transpose();
    return DensityMatrix(space, std::move(m));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed state JSON: ") + e.what());
  }
}

StateVector state_from_json(const Json& j) {
  try {
    const int dim = read_dim(j);
    return StateVector(FockSpace(dim), read_vector(j.at("re"), j.at("im"), dim));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed state JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string wigner_csv(const WignerGrid& grid) {
  std::ostringstream os;
  os << std::setprecision(17) << "x,p,w\n";
  for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix)
    for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip)
      os << grid.x_axis[ix] << ',' << grid.p_axis[ip] << ',' << grid.at(ix, ip) << '\n';
  return os.str();
}

Json wigner_sidecar(const WignerGrid& grid) {
  return Json{{"x_axis", grid.x_axis}, {"p_axis", grid.p_axis}, {"convention", grid.convention}};
}

std::string dataset_csv(const QuadratureDataset& data) {
  std::ostringstream os;
  os << std::setprecision(17) << "theta,x\n";
  for (const auto& s : data.samples) os << s.theta << ',' << s.x << '\n';
  return os.str();
}

Json dataset_sidecar(const QuadratureDataset& data) {
  return Json{{"efficiency", data.efficiency}, {"seed", data.seed}, {"n", data.samples.size()}};
}

QuadratureDataset dataset_from_files(const std::filesystem::path& csv,
                                     const std::filesystem::path& sidecar) {
  const Json meta = read_json_file(sidecar);
  QuadratureDataset data;
  try {
    data.efficiency = meta.at("efficiency").get<double>();
    data.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ValidationError(sidecar.string() + ": " + e.what());
  }
  std::ifstream in(csv);
  if (!in) throw IoError("cannot open " + csv.string());
  std::string line;
  std::getline(in, line);
  if (line != "theta,x") throw ValidationError(csv.string() + ": expected header theta,x");
  int line_no = 1;
  auto field = [&](const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw ValidationError(csv.string() + ":" + std::to_string(line_no) + ": bad number '" +
                            text + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ValidationError(csv.string() + ":" + std::to_string(line_no) + ": malformed line");
    }
    data.samples.push_back({field(line.substr(0, comma)), field(line.substr(comma + 1))});
  }
  if (data.samples.size() != meta.value("n", data.samples.size())) {
    throw ValidationError(csv.string() + ": sample count disagrees with sidecar");
  }
  data.validate();
  return data;
}

}  // namespace pacat
