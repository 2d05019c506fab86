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

#include "halvekit/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <system_error>

#include <openssl/evp.h>

#include "halvekit/error.hpp"

namespace halvekit::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void ingest_error(const fs::path& path, std::size_t line, const std::string& what) {
  std::string where = path.string();
  if (line > 0) where += ":" + std::to_string(line);
  fail(ErrorCode::kIngest, where + ": " + what);
}

double parse_double(const fs::path& path, std::size_t line, const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    ingest_error(path, line, "cannot parse '" + field + "' as a number");
  }
  return value;
}

template <typename T>
T json_field(const Json& j, const char* key, const std::string& context) {
  if (!j.contains(key)) fail(ErrorCode::kIngest, context + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIngest, context + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

CsvColumns read_csv(const fs::path& path, std::span<const std::string_view> required) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIngest, path.string() + ": cannot open file");

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    header = split(t);
    break;
  }
  if (header.empty()) ingest_error(path, 0, "file has no header row");

  std::vector<std::size_t> index;
  for (const auto name : required) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      ingest_error(path, line_no, "missing column '" + std::string(name) + "' in header");
    }
    index.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  CsvColumns out;
  out.columns.resize(required.size());
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t);
    if (fields.size() != header.size()) {
      ingest_error(path, line_no,
                   "expected " + std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < index.size(); ++c) {
      const double v = parse_double(path, line_no, fields[index[c]]);
      if (!std::isfinite(v)) ingest_error(path, line_no, "non-finite value");
      out.columns[c].push_back(v);
    }
    out.lines.push_back(line_no);
  }
  return out;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) fail(ErrorCode::kIo, "number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string csv_text(std::span<const std::string_view> header,
                     std::span<const std::vector<double>> columns) {
  require(header.size() == columns.size(), ErrorCode::kInvalidArgument,
          "CSV header and column count differ");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c > 0) out += ',';
    out += header[c];
  }
  out += '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ',';
      out += format_double(columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, tmp.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::kIo, tmp.string() + ": write failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorCode::kIo, path.string() + ": rename failed: " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIngest, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIo, "SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

Json read_json(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kIngest, path.string() + ": invalid JSON: " + e.what());
  }
}

fs::path sidecar_path(const fs::path& data_file) {
  fs::path p = data_file;
  p.replace_extension(".json");
  return p;
}

DECurve load_de_curve(const fs::path& csv, std::optional<double> frequency_hz,
                      std::optional<std::string> material) {
  static constexpr std::array<std::string_view, 2> kColumns = {"E_V_per_m", "D_C_per_m2"};
  const CsvColumns data = read_csv(csv, kColumns);

  DECurve curve;
  for (std::size_t i = 0; i < data.columns[0].size(); ++i) {
    curve.samples.push_back({data.columns[0][i], data.columns[1][i]});
  }
  if (!frequency_hz || !material) {
    const fs::path side = sidecar_path(csv);
    if (!fs::exists(side)) {
      fail(ErrorCode::kIngest, csv.string() +
                                   ": frequency and material not given and no sidecar " +
                                   side.string());
    }
    const Json j = read_json(side);
    if (!frequency_hz) frequency_hz = json_field<double>(j, "frequency_hz", side.string());
    if (!material) material = json_field<std::string>(j, "material", side.string());
  }
  curve.frequency_hz = *frequency_hz;
  curve.material = *material;
  return curve;
}

void save_spectrum(const PermittivitySpectrum& spectrum, const fs::path& csv) {
  std::vector<std::vector<double>> cols(2);
  for (const auto& p : spectrum.points()) {
    cols[0].push_back(p.field_amplitude);
    cols[1].push_back(p.eps_eff);
  }
  static constexpr std::array<std::string_view, 2> kHeader = {"E_V_per_m", "eps_eff"};
  write_file_atomic(csv, csv_text(kHeader, cols));
  Json side;
  side["material"] = spectrum.material();
  side["frequency_hz"] = spectrum.frequency_hz();
  write_file_atomic(sidecar_path(csv), side.dump(2) + "\n");
}

PermittivitySpectrum load_spectrum(const fs::path& csv) {
  static constexpr std::array<std::string_view, 2> kColumns = {"E_V_per_m", "eps_eff"};
  const CsvColumns data = read_csv(csv, kColumns);
  std::vector<PermittivityPoint> points;
  for (std::size_t i = 0; i < data.columns[0].size(); ++i) {
    points.push_back({data.columns[0][i], data.columns[1][i]});
  }
  double frequency = 0.0;
  std::string material;
  if (const fs::path side = sidecar_path(csv); fs::exists(side)) {
    const Json j = read_json(side);
    frequency = j.value("frequency_hz", 0.0);
    material = j.value("material", std::string());
  }
  try {
    return PermittivitySpectrum(std::move(points), frequency, std::move(material));
  } catch (const Error& e) {
    fail(ErrorCode::kIngest, csv.string() + ": " + e.what());
  }
}

ActuatorGeometry geometry_from_json(const Json& j) {
  const std::string ctx = "geometry";
  ActuatorGeometry g;
  g.width_m = json_field<double>(j, "w_m", ctx);
  g.pouch_length_m = json_field<double>(j, "Lp_m", ctx);
  g.electrode_length_m = json_field<double>(j, "Le_m", ctx);
  g.dielectric_thickness_m = json_field<double>(j, "t_m", ctx);
  g.fill_fraction = j.value("fill_fraction", 0.95);
  g.num_pouches = j.value("num_pouches", 1);
  g.actuator_mass_kg = j.value("mass_kg", 0.0);
  try {
    g.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kIngest, ctx + ": " + e.what());
  }
  return g;
}

Json geometry_to_json(const ActuatorGeometry& g) {
  Json j;
  j["w_m"] = g.width_m;
  j["Lp_m"] = g.pouch_length_m;
  j["Le_m"] = g.electrode_length_m;
  j["t_m"] = g.dielectric_thickness_m;
  j["fill_fraction"] = g.fill_fraction;
  j["num_pouches"] = g.num_pouches;
  j["mass_kg"] = g.actuator_mass_kg;
  return j;
}

ActuatorGeometry load_geometry(const fs::path& json_file) {
  try {
    return geometry_from_json(read_json(json_file));
  } catch (const Error& e) {
    fail(ErrorCode::kIngest, json_file.string() + ": " + e.what());
  }
}

std::string curve_csv(const ForceStrainCurve& curve) {
  std::vector<std::vector<double>> cols(2);
  for (const auto& p : curve.points) {
    cols[0].push_back(p.strain);
    cols[1].push_back(p.force);
  }
  static constexpr std::array<std::string_view, 2> kHeader = {"strain", "force_N"};
  return csv_text(kHeader, cols);
}

DisplacementTrace load_trace(const fs::path& csv, std::optional<fs::path> sidecar) {
  static constexpr std::array<std::string_view, 2> kColumns = {"time_s", "contraction_m"};
  const CsvColumns data = read_csv(csv, kColumns);
  DisplacementTrace trace;
  for (std::size_t i = 0; i < data.columns[0].size(); ++i) {
    trace.samples.push_back({data.columns[0][i], data.columns[1][i]});
    if (i > 0 && trace.samples[i].time <= trace.samples[i - 1].time) {
      ingest_error(csv, data.lines[i], "time is not strictly increasing");
    }
  }
  const fs::path side = sidecar.value_or(sidecar_path(csv));
  const Json j = read_json(side);
  const std::string ctx = side.string();
  trace.load_kg = json_field<double>(j, "load_kg", ctx);
  trace.actuator_mass_kg = json_field<double>(j, "actuator_mass_kg", ctx);
  trace.actuator_length_m = json_field<double>(j, "actuator_length_m", ctx);
  trace.voltage = json_field<double>(j, "voltage_V", ctx);
  return trace;
}

Measurement load_measurement(const fs::path& csv) {
  static constexpr std::array<std::string_view, 2> kColumns = {"strain", "force_N"};
  const CsvColumns data = read_csv(csv, kColumns);
  Measurement m;
  m.curve.source = CurveSource::kMeasurement;
  for (std::size_t i = 0; i < data.columns[0].size(); ++i) {
    m.curve.points.push_back({data.columns[0][i], data.columns[1][i]});
  }
  const fs::path side = sidecar_path(csv);
  if (fs::exists(side)) {
    const Json j = read_json(side);
    m.curve.voltage = j.value("voltage_V", 0.0);
    if (j.contains("geometry") && j["geometry"].is_string()) {
      m.geometry = side.parent_path() / j["geometry"].get<std::string>();
    }
  }
  try {
    m.curve.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kIngest, csv.string() + ": " + e.what());
  }
  return m;
}

ParameterBox box_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::kIngest, "parameter box must be a JSON list");
  std::vector<ParameterBound> bounds;
  for (const auto& item : j) {
    const std::string ctx = "parameter box entry";
    ParameterBound b;
    b.name = json_field<std::string>(item, "name", ctx);
    b.min = json_field<double>(item, "min", ctx + " '" + b.name + "'");
    b.max = json_field<double>(item, "max", ctx + " '" + b.name + "'");
    b.initial = json_field<double>(item, "initial", ctx + " '" + b.name + "'");
    bounds.push_back(std::move(b));
  }
  return ParameterBox(std::move(bounds));
}

ParameterBox load_box(const fs::path& json_file) {
  try {
    return box_from_json(read_json(json_file));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIngest) fail(ErrorCode::kIngest, json_file.string() + ": " + e.what());
    throw;
  }
}

Json fit_result_to_json(const FitResult& r) {
  Json j;
  Json params;
  const auto values = r.parameters.to_array();
  for (std::size_t i = 0; i < kNumModelParameters; ++i) {
    params[std::string(kParameterNames[i])] = values[i];
  }
  j["parameters"] = params;
  j["residual_rmse_N"] = r.residual_rmse;
  j["measured_energy_density_J_per_kg"] = r.measured_energy_density;
  Json curve = Json::array();
  for (const auto& p : r.fitted_curve.points) curve.push_back({p.strain, p.force});
  j["fitted_curve"] = {{"voltage_V", r.fitted_curve.voltage}, {"points", curve}};
  Json trace;
  trace["seed"] = r.trace.seed;
  trace["iterations"] = r.trace.iterations;
  trace["final_objective_N2"] = r.trace.final_objective;
  trace["converged"] = r.trace.converged;
  trace["best_restart"] = r.trace.best_restart;
  trace["restart_objectives"] = r.trace.restart_objectives;
  trace["restart_iterations"] = r.trace.restart_iterations;
  trace["best_so_far"] = r.trace.best_so_far;
  j["optimizer_trace"] = trace;
  return j;
}

Json kinetic_report_to_json(const KineticReport& r) {
  Json j;
  j["peak_strain_rate_percent_per_s"] = r.peak_strain_rate;
  j["peak_specific_power_W_per_kg"] = r.peak_specific_power;
  j["avg_specific_power_W_per_kg"] = r.avg_specific_power;
  j["t_start_s"] = r.t_start;
  j["t_end_s"] = r.t_end;
  j["steady_strain"] = r.steady_strain;
  return j;
}

}  // namespace halvekit::io
