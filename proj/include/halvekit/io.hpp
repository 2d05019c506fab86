// Copyright 2026 The halvekit Authors
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

#ifndef HALVEKIT_IO_HPP_
#define HALVEKIT_IO_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "halvekit/actuator_model.hpp"
#include "halvekit/dielectric.hpp"
#include "halvekit/kinetics.hpp"
#include "halvekit/sysid.hpp"

namespace halvekit::io {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Numeric columns of a CSV file, in the order they were requested.
struct CsvColumns {
  std::vector<std::vector<double>> columns;
  std::vector<std::size_t> lines;  // 1-based source line of each row
};

// Reads a comma-separated file with a header row. Every requested column must
// appear in the header; errors carry file and line context.
CsvColumns read_csv(const fs::path& path, std::span<const std::string_view> required);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Writes rows of doubles under a header, one line per row.
std::string csv_text(std::span<const std::string_view> header,
                     std::span<const std::vector<double>> columns);

// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const fs::path& path, std::string_view content);

std::string read_file(const fs::path& path);
std::string sha256_hex(std::string_view data);
std::string sha256_file(const fs::path& path);

Json read_json(const fs::path& path);

// foo/bar.csv -> foo/bar.json
fs::path sidecar_path(const fs::path& data_file);

// D-E loop CSV `E_V_per_m,D_C_per_m2`. Frequency and material come from the
// arguments when given, otherwise from the JSON sidecar.
DECurve load_de_curve(const fs::path& csv, std::optional<double> frequency_hz = std::nullopt,
                      std::optional<std::string> material = std::nullopt);

// Spectrum CSV `E_V_per_m,eps_eff` plus sidecar `{material, frequency_hz}`.
void save_spectrum(const PermittivitySpectrum& spectrum, const fs::path& csv);
PermittivitySpectrum load_spectrum(const fs::path& csv);

ActuatorGeometry geometry_from_json(const Json& j);
Json geometry_to_json(const ActuatorGeometry& geom);
ActuatorGeometry load_geometry(const fs::path& json_file);

// `strain,force_N`
std::string curve_csv(const ForceStrainCurve& curve);

// Trace CSV `time_s,contraction_m` with sidecar
// `{load_kg, actuator_mass_kg, actuator_length_m, voltage_V}`.
DisplacementTrace load_trace(const fs::path& csv, std::optional<fs::path> sidecar = std::nullopt);

struct Measurement {
  ForceStrainCurve curve;
  std::optional<fs::path> geometry;  // resolved relative to the sidecar
};

// Measurement CSV `strain,force_N` with sidecar `{voltage_V, geometry}`.
Measurement load_measurement(const fs::path& csv);

// JSON list of `{name, min, max, initial}`.
ParameterBox box_from_json(const Json& j);
ParameterBox load_box(const fs::path& json_file);

Json fit_result_to_json(const FitResult& result);
Json kinetic_report_to_json(const KineticReport& report);

}  // namespace halvekit::io

#endif  // HALVEKIT_IO_HPP_
