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

#include "halvekit/commands.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <exception>
#include <utility>

#include "halvekit/dielectric.hpp"
#include "halvekit/error.hpp"
#include "halvekit/io.hpp"
#include "halvekit/sysid.hpp"

namespace halvekit::commands {

namespace {

using io::Json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

// Collects inputs, outputs and configuration of one command and writes the
// manifest when the run ends.
class Run {
 public:
  Run(std::string command, fs::path out_dir) : out_dir_(std::move(out_dir)) {
    manifest_["command"] = std::move(command);
    manifest_["tool_version"] = HALVEKIT_VERSION;
    manifest_["started_at"] = utc_now();
    manifest_["config"] = Json::object();
    manifest_["inputs"] = Json::array();
    manifest_["outputs"] = Json::array();
  }

  Json& config() { return manifest_["config"]; }
  void seed(std::uint64_t s) { manifest_["seed"] = s; }

  void input(const fs::path& path) {
    manifest_["inputs"].push_back(
        {{"path", fs::absolute(path).lexically_normal().string()}, {"sha256", io::sha256_file(path)}});
  }

  void output(const std::string& name, std::string_view content) {
    io::write_file_atomic(out_dir_ / name, content);
    manifest_["outputs"].push_back({{"path", name}, {"sha256", io::sha256_hex(content)}});
  }

  void warn(std::string message) { outcome_.warnings.push_back(std::move(message)); }
  void status(std::string s) { status_ = std::move(s); }

  template <typename Body>
  Outcome execute(Body&& body) {
    try {
      body();
    } catch (const Error& e) {
      outcome_.exit_code = exit_code_for(e.code());
      outcome_.message = e.what();
      status_ = std::string(to_string(e.code()));
    } catch (const fs::filesystem_error& e) {
      outcome_.exit_code = 2;
      outcome_.message = e.what();
      status_ = "IoError";
    } catch (const std::exception& e) {
      outcome_.exit_code = 3;
      outcome_.message = e.what();
      status_ = "InternalError";
    }
    manifest_["status"] = status_;
    manifest_["exit_code"] = outcome_.exit_code;
    manifest_["message"] = outcome_.message;
    manifest_["warnings"] = outcome_.warnings;
    manifest_["finished_at"] = utc_now();
    try {
      io::write_file_atomic(out_dir_ / "manifest.json", manifest_.dump(2) + "\n");
    } catch (const Error& e) {
      if (outcome_.exit_code == 0) {
        outcome_.exit_code = 2;
        outcome_.message = e.what();
      }
    }
    return outcome_;
  }

 private:
  fs::path out_dir_;
  Json manifest_;
  Outcome outcome_;
  std::string status_ = "ok";
};

std::string voltage_tag(double v) { return io::format_double(v) + "V"; }

}  // namespace

Outcome run_permittivity(const PermittivityRequest& request) {
  Run run("permittivity", request.out_dir);
  return run.execute([&] {
    require(!request.de_files.empty(), ErrorCode::kInvalidArgument, "no D-E files given");
    if (request.frequency_hz) run.config()["frequency_hz"] = *request.frequency_hz;
    if (request.material) run.config()["material"] = *request.material;

    std::vector<DECurve> curves;
    for (const auto& f : request.de_files) {
      run.input(f);
      if (const auto side = io::sidecar_path(f); fs::exists(side)) run.input(side);
      curves.push_back(io::load_de_curve(f, request.frequency_hz, request.material));
    }
    const PermittivitySpectrum spectrum = build_spectrum(curves);

    std::vector<std::vector<double>> cols(2);
    for (const auto& p : spectrum.points()) {
      cols[0].push_back(p.field_amplitude);
      cols[1].push_back(p.eps_eff);
    }
    static constexpr std::array<std::string_view, 2> kHeader = {"E_V_per_m", "eps_eff"};
    run.output("spectrum.csv", io::csv_text(kHeader, cols));
    Json side;
    side["material"] = spectrum.material();
    side["frequency_hz"] = spectrum.frequency_hz();
    run.output("spectrum.json", side.dump(2) + "\n");
  });
}

Outcome run_predict(const PredictRequest& request) {
  Run run("predict", request.out_dir);
  return run.execute([&] {
    run.config()["voltages_V"] = request.voltages;
    run.config()["n_points"] = request.n_points;
    run.config()["alpha_min"] = request.alpha_min;
    require(!request.voltages.empty(), ErrorCode::kInvalidArgument, "no voltages given");

    run.input(request.geometry);
    run.input(request.spectrum);
    const ActuatorGeometry geom = io::load_geometry(request.geometry);
    const PermittivitySpectrum spectrum = io::load_spectrum(request.spectrum);
    const std::string spectrum_hash = io::sha256_file(request.spectrum);
    const SweepRange range = sweep_range(geom, request.alpha_min);

    std::vector<std::vector<double>> energy(2);
    for (const double v : request.voltages) {
      const ForceStrainCurve curve =
          force_strain_curve(geom, spectrum, v, request.n_points, request.alpha_min);
      const std::string name = "curve_" + voltage_tag(v);
      run.output(name + ".csv", io::curve_csv(curve));
      Json side;
      side["voltage_V"] = v;
      side["spectrum_sha256"] = spectrum_hash;
      side["alpha_min"] = range.alpha_lo;
      side["alpha_max"] = range.alpha_hi;
      side["field_clamped"] = curve.field_clamped;
      run.output(name + ".json", side.dump(2) + "\n");
      if (curve.field_clamped) {
        run.warn("drive field " + io::format_double(v / geom.dielectric_thickness_m) +
                 " V/m at " + voltage_tag(v) + " lies outside the spectrum; eps_eff clamped");
      }
      energy[0].push_back(v / geom.dielectric_thickness_m * 1e-6);
      energy[1].push_back(actuator_energy_density(curve, geom));
    }
    static constexpr std::array<std::string_view, 2> kHeader = {"E_V_per_um", "u_J_per_kg"};
    run.output("energy_density.csv", io::csv_text(kHeader, energy));
  });
}

Outcome run_kinetics(const KineticsRequest& request) {
  Run run("kinetics", request.out_dir);
  return run.execute([&] {
    const auto& o = request.options;
    run.config()["window"] = o.window;
    run.config()["order"] = o.order;
    run.config()["start_fraction"] = o.detection.start_fraction;
    run.config()["settle_band"] = o.detection.settle_band;
    run.config()["steady_tail"] = o.detection.steady_tail;
    run.config()["noise_floor_m"] = o.detection.noise_floor_m;

    run.input(request.trace);
    const fs::path side = request.sidecar.value_or(io::sidecar_path(request.trace));
    run.input(side);
    const DisplacementTrace trace = io::load_trace(request.trace, side);
    const KineticAnalysis a = analyze_trace(trace, o);

    run.output("report.json", io::kinetic_report_to_json(a.report).dump(2) + "\n");
    const auto& s = a.smoothed;
    const DisplacementTrace uniform = make_uniform(trace);
    std::vector<double> raw;
    for (const auto& p : uniform.samples) raw.push_back(p.contraction);

    const std::array<std::string_view, 3> contraction_header = {"time_s", "contraction_m",
                                                                "smoothed_m"};
    const std::vector<std::vector<double>> contraction = {s.time, raw, s.position};
    run.output("contraction.csv", io::csv_text(contraction_header, contraction));
    const std::array<std::string_view, 2> velocity_header = {"time_s", "velocity_m_per_s"};
    const std::vector<std::vector<double>> velocity = {s.time, s.velocity};
    run.output("velocity.csv", io::csv_text(velocity_header, velocity));
    const std::array<std::string_view, 2> accel_header = {"time_s", "acceleration_m_per_s2"};
    const std::vector<std::vector<double>> accel = {s.time, s.acceleration};
    run.output("acceleration.csv", io::csv_text(accel_header, accel));
    const std::array<std::string_view, 2> power_header = {"time_s", "specific_power_W_per_kg"};
    const std::vector<std::vector<double>> power = {a.power.time, a.power.specific_power};
    run.output("specific_power.csv", io::csv_text(power_header, power));
  });
}

Outcome run_fit(const FitRequest& request) {
  Run run("fit", request.out_dir);
  return run.execute([&] {
    run.seed(request.seed);
    run.config()["restarts"] = request.restarts;

    run.input(request.measurements);
    if (const auto side = io::sidecar_path(request.measurements); fs::exists(side)) run.input(side);
    run.input(request.box);
    const io::Measurement m = io::load_measurement(request.measurements);
    const ParameterBox box = io::load_box(request.box);

    std::optional<ActuatorGeometry> geom;
    if (const auto gpath = request.geometry ? request.geometry : m.geometry) {
      run.input(*gpath);
      geom = io::load_geometry(*gpath);
    }

    FitOptions options;
    options.restarts = request.restarts;
    options.threads = request.threads;
    options.fill_fraction = geom ? geom->fill_fraction : request.fill_fraction;
    run.config()["fill_fraction"] = options.fill_fraction;
    run.config()["max_iterations"] = options.max_iterations;
    run.config()["objective_tolerance"] = options.objective_tolerance;
    run.config()["curve_knots"] = options.curve_knots;

    FitResult result = fit_force_strain(m.curve, box, request.seed, options);
    if (geom && geom->actuator_mass_kg > 0.0) energy_density_from_fit(result, *geom);

    Json j = io::fit_result_to_json(result);
    try {
      j["closed_form_max_deviation_N"] = validate_closed_form(result);
    } catch (const Error&) {
      j["closed_form_max_deviation_N"] = nullptr;
    }
    run.output("fit_result.json", j.dump(2) + "\n");
    run.output("fitted_curve.csv", io::curve_csv(result.fitted_curve));

    std::vector<std::vector<double>> overlay(3);
    for (const auto& p : m.curve.points) {
      overlay[0].push_back(p.strain);
      overlay[1].push_back(p.force);
      overlay[2].push_back(model_force(result.parameters, options.fill_fraction, p.strain).value_or(0.0));
    }
    static constexpr std::array<std::string_view, 3> kHeader = {"strain", "measured_force_N",
                                                                "fitted_force_N"};
    run.output("overlay.csv", io::csv_text(kHeader, overlay));

    if (!result.trace.converged) {
      run.status("NonConvergence");
      run.warn("NonConvergence: best objective " + io::format_double(result.trace.final_objective) +
               " N^2 after " + std::to_string(result.trace.iterations) + " iterations");
    }
  });
}

std::vector<std::string> verify_manifest(const fs::path& out_dir) {
  const Json m = io::read_json(out_dir / "manifest.json");
  std::vector<std::string> mismatched;
  auto check = [&](const fs::path& path, const std::string& expected) {
    if (!fs::exists(path) || io::sha256_file(path) != expected) mismatched.push_back(path.string());
  };
  for (const auto& in : m.value("inputs", Json::array())) {
    check(in.at("path").get<std::string>(), in.at("sha256").get<std::string>());
  }
  for (const auto& out : m.value("outputs", Json::array())) {
    check(out_dir / out.at("path").get<std::string>(), out.at("sha256").get<std::string>());
  }
  return mismatched;
}

}  // namespace halvekit::commands
