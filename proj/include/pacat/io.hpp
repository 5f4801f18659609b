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

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "pacat/fock.hpp"
#include "pacat/tomography.hpp"
#include "pacat/wigner.hpp"

namespace pacat {

using Json = nlohmann::json;

// {"dim": D, "re": [[...]], "im": [[...]]}, row-major. Numbers are written
// in shortest round-trip form, so decoding is exact.
Json to_json(const DensityMatrix& rho);
// Same object with one-dimensional "re"/"im".
Json to_json(const StateVector& psi);

// Accepts both the matrix and the vector form; a vector becomes |psi><psi|.
DensityMatrix density_from_json(const Json& j);
StateVector state_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// CSV `x,p,w`, 17 significant digits, one point per line.
std::string wigner_csv(const WignerGrid& grid);
Json wigner_sidecar(const WignerGrid& grid);

// CSV `theta,x`, plus {efficiency, seed, n}.
std::string dataset_csv(const QuadratureDataset& data);
Json dataset_sidecar(const QuadratureDataset& data);
QuadratureDataset dataset_from_files(const std::filesystem::path& csv,
                                     const std::filesystem::path& sidecar);

}  // namespace pacat
