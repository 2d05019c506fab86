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

#include "halvekit/halvekit.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "halvekit/actuator_model.hpp"
#include "halvekit/commands.hpp"
#include "halvekit/dielectric.hpp"
#include "halvekit/error.hpp"
#include "halvekit/io.hpp"
#include "halvekit/kinetics.hpp"
#include "halvekit/sysid.hpp"

struct hk_spectrum {
  halvekit::PermittivitySpectrum value;
};

struct hk_curve {
  halvekit::ForceStrainCurve value;
};

struct hk_fit {
  halvekit::FitResult value;
  hk_curve curve;
};

namespace {

using namespace halvekit;

thread_local std::string g_last_error;
thread_local std::vector<std::string> g_last_warnings;

hk_status set_error(hk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
hk_status guard(Body&& body) {
  try {
    body();
    return HK_OK;
  } catch (const Error& e) {
    return set_error(static_cast<hk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(HK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(HK_ERR_INTERNAL, e.what());
  }
}

#define HK_REQUIRE_NONNULL(ptr)                                              \
  do {                                                                       \
    if ((ptr) == nullptr) return set_error(HK_ERR_NULL_POINTER, #ptr " is NULL"); \
  } while (0)

ActuatorGeometry to_geometry(const hk_geometry& g) {
  ActuatorGeometry out;
  out.width_m = g.width_m;
  out.pouch_length_m = g.pouch_length_m;
  out.electrode_length_m = g.electrode_length_m;
  out.dielectric_thickness_m = g.dielectric_thickness_m;
  out.fill_fraction = g.fill_fraction;
  out.num_pouches = g.num_pouches;
  out.actuator_mass_kg = g.actuator_mass_kg;
  return out;
}

DECurve to_de_curve(const double* e, const double* d, size_t n) {
  DECurve c;
  c.samples.reserve(n);
  for (size_t i = 0; i < n; ++i) c.samples.push_back({e[i], d[i]});
  return c;
}

KineticsOptions to_kinetics_options(const hk_kinetics_options& o) {
  KineticsOptions out;
  out.window = o.window;
  out.order = o.order;
  out.detection.start_fraction = o.start_fraction;
  out.detection.settle_band = o.settle_band;
  out.detection.steady_tail = o.steady_tail;
  out.detection.noise_floor_m = o.noise_floor_m;
  return out;
}

int finish_command(const commands::Outcome& outcome) {
  g_last_warnings = outcome.warnings;
  if (outcome.exit_code != 0) g_last_error = outcome.message;
  return outcome.exit_code;
}

template <typename Body>
int command_guard(Body&& body) {
  g_last_warnings.clear();
  try {
    return finish_command(body());
  } catch (const Error& e) {
    g_last_error = e.what();
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 3;
  }
}

}  // namespace

extern "C" {

const char* hk_version(void) { return HALVEKIT_VERSION; }

const char* hk_last_error(void) { return g_last_error.c_str(); }

const char* hk_status_name(hk_status status) {
  switch (status) {
    case HK_OK: return "OK";
    case HK_ERR_NULL_POINTER: return "NullPointer";
    case HK_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  static thread_local std::string name;
  name = std::string(to_string(static_cast<ErrorCode>(status)));
  return name.c_str();
}

int hk_exit_code(hk_status status) {
  if (status == HK_OK) return 0;
  if (status == HK_ERR_NULL_POINTER) return 4;
  if (status == HK_ERR_INTERNAL) return 3;
  return exit_code_for(static_cast<ErrorCode>(status));
}

// ---- dielectric ----

hk_status hk_spectrum_create(const double* fields, const double* eps_eff, size_t n,
                             double frequency_hz, const char* material, hk_spectrum** out) {
  HK_REQUIRE_NONNULL(out);
  if (n > 0) {
    HK_REQUIRE_NONNULL(fields);
    HK_REQUIRE_NONNULL(eps_eff);
  }
  return guard([&] {
    std::vector<PermittivityPoint> points;
    for (size_t i = 0; i < n; ++i) points.push_back({fields[i], eps_eff[i]});
    *out = new hk_spectrum{PermittivitySpectrum(std::move(points), frequency_hz,
                                                material ? material : "")};
  });
}

hk_status hk_spectrum_load(const char* csv_path, hk_spectrum** out) {
  HK_REQUIRE_NONNULL(csv_path);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = new hk_spectrum{io::load_spectrum(csv_path)}; });
}

hk_status hk_spectrum_from_loops(const char* const* csv_paths, size_t n, double frequency_hz,
                                 const char* material, hk_spectrum** out) {
  HK_REQUIRE_NONNULL(csv_paths);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    std::vector<DECurve> curves;
    const auto freq = std::isnan(frequency_hz) ? std::nullopt : std::optional<double>(frequency_hz);
    const auto mat = material ? std::optional<std::string>(material) : std::nullopt;
    for (size_t i = 0; i < n; ++i) curves.push_back(io::load_de_curve(csv_paths[i], freq, mat));
    *out = new hk_spectrum{build_spectrum(curves)};
  });
}

void hk_spectrum_destroy(hk_spectrum* spectrum) { delete spectrum; }

size_t hk_spectrum_size(const hk_spectrum* spectrum) {
  return spectrum ? spectrum->value.points().size() : 0;
}

hk_status hk_spectrum_point(const hk_spectrum* spectrum, size_t index, double* field,
                            double* eps_eff) {
  HK_REQUIRE_NONNULL(spectrum);
  if (index >= spectrum->value.points().size()) {
    return set_error(HK_ERR_INVALID_ARGUMENT, "spectrum index out of range");
  }
  const auto& p = spectrum->value.points()[index];
  if (field) *field = p.field_amplitude;
  if (eps_eff) *eps_eff = p.eps_eff;
  return HK_OK;
}

hk_status hk_spectrum_lookup(const hk_spectrum* spectrum, double field, double* eps_eff,
                             int* clamped) {
  HK_REQUIRE_NONNULL(spectrum);
  HK_REQUIRE_NONNULL(eps_eff);
  return guard([&] {
    const LookupResult r = spectrum_lookup(spectrum->value, field);
    *eps_eff = r.eps_eff;
    if (clamped) *clamped = r.clamped ? 1 : 0;
  });
}

hk_status hk_energy_density(const double* fields, const double* displacements, size_t n,
                            double* out) {
  HK_REQUIRE_NONNULL(fields);
  HK_REQUIRE_NONNULL(displacements);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = energy_density(to_de_curve(fields, displacements, n)); });
}

hk_status hk_loop_permittivity(const double* fields, const double* displacements, size_t n,
                               double* amplitude, double* eps_eff) {
  HK_REQUIRE_NONNULL(fields);
  HK_REQUIRE_NONNULL(displacements);
  return guard([&] {
    const auto p = effective_permittivity(
        extract_discharge_branch(to_de_curve(fields, displacements, n)));
    if (amplitude) *amplitude = p.field_amplitude;
    if (eps_eff) *eps_eff = p.eps_eff;
  });
}

// ---- actuator model ----

void hk_geometry_init(hk_geometry* geom) {
  if (geom == nullptr) return;
  *geom = hk_geometry{0.0, 0.0, 0.0, 0.0, 0.95, 1, 0.0};
}

hk_status hk_geometry_load(const char* json_path, hk_geometry* out) {
  HK_REQUIRE_NONNULL(json_path);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    const ActuatorGeometry g = io::load_geometry(json_path);
    *out = hk_geometry{g.width_m,       g.pouch_length_m, g.electrode_length_m,
                       g.dielectric_thickness_m, g.fill_fraction, g.num_pouches,
                       g.actuator_mass_kg};
  });
}

hk_status hk_capacitance(const hk_geometry* geom, double eps_r, double zipped_fraction,
                         double* out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = capacitance(to_geometry(*geom), eps_r, zipped_fraction); });
}

hk_status hk_electrical_energy(double capacitance_f, double voltage, double* out) {
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = electrical_energy(capacitance_f, voltage); });
}

hk_status hk_voltage_reduction_ratio(double t_ref_m, double eps_ref, double t_new_m,
                                     const hk_spectrum* spectrum, double field_new, double* out) {
  HK_REQUIRE_NONNULL(spectrum);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    *out = voltage_reduction_ratio(t_ref_m, eps_ref, t_new_m, spectrum->value, field_new);
  });
}

hk_status hk_fill_volume(const hk_geometry* geom, double* out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = fill_volume(to_geometry(*geom)); });
}

hk_status hk_rest_angle(const hk_geometry* geom, double* out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = rest_angle(to_geometry(*geom)); });
}

hk_status hk_zip_geometry(const hk_geometry* geom, double alpha, hk_zip_state* out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    const ZipState s = zip_geometry(to_geometry(*geom), ZipAngle(alpha));
    *out = hk_zip_state{s.strain, s.unzipped_length_m, s.zipped_length_m};
  });
}

hk_status hk_force_at(const hk_geometry* geom, const hk_spectrum* spectrum, double voltage,
                      double alpha, double* out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(spectrum);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    *out = force_at(to_geometry(*geom), spectrum->value, voltage, ZipAngle(alpha));
  });
}

hk_status hk_force_strain_curve(const hk_geometry* geom, const hk_spectrum* spectrum,
                                double voltage, int n_points, double alpha_min, hk_curve** out) {
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(spectrum);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    *out = new hk_curve{
        force_strain_curve(to_geometry(*geom), spectrum->value, voltage, n_points, alpha_min)};
  });
}

hk_status hk_actuator_energy_density(const hk_curve* curve, const hk_geometry* geom,
                                     double* out) {
  HK_REQUIRE_NONNULL(curve);
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = actuator_energy_density(curve->value, to_geometry(*geom)); });
}

hk_status hk_supply_budget(double capacitance_f, double voltage, double frequency_hz,
                           double idle_power_w, double converter_efficiency,
                           double battery_energy_wh, hk_budget* out) {
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    const SupplyBudget b = supply_budget(capacitance_f, voltage, frequency_hz, idle_power_w,
                                         converter_efficiency, battery_energy_wh);
    *out = hk_budget{b.average_power_w, b.runtime_h};
  });
}

hk_status hk_curve_create(const double* strain, const double* force, size_t n, double voltage,
                          int is_measurement, hk_curve** out) {
  HK_REQUIRE_NONNULL(out);
  if (n > 0) {
    HK_REQUIRE_NONNULL(strain);
    HK_REQUIRE_NONNULL(force);
  }
  return guard([&] {
    ForceStrainCurve c;
    c.voltage = voltage;
    c.source = is_measurement ? CurveSource::kMeasurement : CurveSource::kModel;
    for (size_t i = 0; i < n; ++i) c.points.push_back({strain[i], force[i]});
    c.validate();
    *out = new hk_curve{std::move(c)};
  });
}

void hk_curve_destroy(hk_curve* curve) { delete curve; }

size_t hk_curve_size(const hk_curve* curve) { return curve ? curve->value.points.size() : 0; }

hk_status hk_curve_point(const hk_curve* curve, size_t index, double* strain, double* force) {
  HK_REQUIRE_NONNULL(curve);
  if (index >= curve->value.points.size()) {
    return set_error(HK_ERR_INVALID_ARGUMENT, "curve index out of range");
  }
  const auto& p = curve->value.points[index];
  if (strain) *strain = p.strain;
  if (force) *force = p.force;
  return HK_OK;
}

// ---- kinetics ----

void hk_kinetics_options_init(hk_kinetics_options* options) {
  if (options == nullptr) return;
  const KineticsOptions d;
  *options = hk_kinetics_options{d.window,
                                 d.order,
                                 d.detection.start_fraction,
                                 d.detection.settle_band,
                                 d.detection.steady_tail,
                                 d.detection.noise_floor_m};
}

hk_status hk_analyze_trace(const double* time, const double* contraction, size_t n,
                           const hk_trace_meta* meta, const hk_kinetics_options* options,
                           hk_kinetic_report* out) {
  HK_REQUIRE_NONNULL(time);
  HK_REQUIRE_NONNULL(contraction);
  HK_REQUIRE_NONNULL(meta);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    DisplacementTrace trace;
    for (size_t i = 0; i < n; ++i) trace.samples.push_back({time[i], contraction[i]});
    trace.load_kg = meta->load_kg;
    trace.actuator_mass_kg = meta->actuator_mass_kg;
    trace.actuator_length_m = meta->actuator_length_m;
    trace.voltage = meta->voltage;
    hk_kinetics_options o;
    hk_kinetics_options_init(&o);
    if (options) o = *options;
    const KineticReport r = analyze_trace(trace, to_kinetics_options(o)).report;
    *out = hk_kinetic_report{r.peak_strain_rate, r.peak_specific_power, r.avg_specific_power,
                             r.t_start,          r.t_end,               r.steady_strain};
  });
}

hk_status hk_durability_decline(const double* cycle_strains, size_t n, size_t window,
                                double* out) {
  HK_REQUIRE_NONNULL(out);
  if (n > 0) HK_REQUIRE_NONNULL(cycle_strains);
  return guard([&] {
    *out = durability_decline(std::span<const double>(cycle_strains, n), window);
  });
}

// ---- sysid ----

void hk_fit_options_init(hk_fit_options* options) {
  if (options == nullptr) return;
  const FitOptions d;
  *options = hk_fit_options{d.restarts,    d.max_iterations, d.objective_tolerance,
                            d.curve_knots, d.fill_fraction,  d.threads};
}

hk_status hk_fit_force_strain(const hk_curve* data, const hk_param_bound* bounds,
                              size_t n_bounds, uint64_t seed, const hk_fit_options* options,
                              hk_fit** out) {
  HK_REQUIRE_NONNULL(data);
  HK_REQUIRE_NONNULL(bounds);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    std::vector<ParameterBound> b;
    for (size_t i = 0; i < n_bounds; ++i) {
      require(bounds[i].name != nullptr, ErrorCode::kInvalidArgument, "bound without a name");
      b.push_back({bounds[i].name, bounds[i].min, bounds[i].max, bounds[i].initial});
    }
    FitOptions o;
    if (options) {
      o.restarts = options->restarts;
      o.max_iterations = options->max_iterations;
      o.objective_tolerance = options->objective_tolerance;
      o.curve_knots = options->curve_knots;
      o.fill_fraction = options->fill_fraction;
      o.threads = options->threads;
    }
    FitResult r = fit_force_strain(data->value, ParameterBox(std::move(b)), seed, o);
    auto* fit = new hk_fit{std::move(r), {}};
    fit->curve.value = fit->value.fitted_curve;
    *out = fit;
  });
}

void hk_fit_destroy(hk_fit* fit) { delete fit; }

hk_status hk_fit_parameters(const hk_fit* fit, double* out8) {
  HK_REQUIRE_NONNULL(fit);
  HK_REQUIRE_NONNULL(out8);
  const auto v = fit->value.parameters.to_array();
  std::memcpy(out8, v.data(), sizeof(double) * v.size());
  return HK_OK;
}

hk_status hk_fit_rmse(const hk_fit* fit, double* out) {
  HK_REQUIRE_NONNULL(fit);
  HK_REQUIRE_NONNULL(out);
  *out = fit->value.residual_rmse;
  return HK_OK;
}

hk_status hk_fit_status(const hk_fit* fit, int* iterations, double* final_objective,
                        int* converged) {
  HK_REQUIRE_NONNULL(fit);
  const auto& t = fit->value.trace;
  if (iterations) *iterations = t.iterations;
  if (final_objective) *final_objective = t.final_objective;
  if (converged) *converged = t.converged ? 1 : 0;
  return HK_OK;
}

const hk_curve* hk_fit_curve(const hk_fit* fit) { return fit ? &fit->curve : nullptr; }

hk_status hk_fit_energy_density(hk_fit* fit, const hk_geometry* geom, double* out) {
  HK_REQUIRE_NONNULL(fit);
  HK_REQUIRE_NONNULL(geom);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = energy_density_from_fit(fit->value, to_geometry(*geom)); });
}

hk_status hk_fit_to_json(const hk_fit* fit, char** out) {
  HK_REQUIRE_NONNULL(fit);
  HK_REQUIRE_NONNULL(out);
  return guard([&] {
    const std::string s = io::fit_result_to_json(fit->value).dump(2);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void hk_string_free(char* s) { delete[] s; }

hk_status hk_closed_form_eval(double strain_percent, double* force, int* negative) {
  HK_REQUIRE_NONNULL(force);
  return guard([&] {
    const ClosedFormValue v = closed_form_eval(strain_percent);
    *force = v.force_n;
    if (negative) *negative = v.negative ? 1 : 0;
  });
}

hk_status hk_validate_closed_form(const hk_curve* curve, double* out) {
  HK_REQUIRE_NONNULL(curve);
  HK_REQUIRE_NONNULL(out);
  return guard([&] { *out = validate_closed_form(curve->value); });
}

// ---- commands ----

int hk_run_permittivity(const hk_permittivity_request* request) {
  if (request == nullptr || request->out_dir == nullptr) {
    g_last_error = "request or out_dir is NULL";
    return 4;
  }
  return command_guard([&] {
    commands::PermittivityRequest r;
    for (size_t i = 0; i < request->n_files; ++i) r.de_files.emplace_back(request->de_files[i]);
    if (!std::isnan(request->frequency_hz)) r.frequency_hz = request->frequency_hz;
    if (request->material) r.material = request->material;
    r.out_dir = request->out_dir;
    return commands::run_permittivity(r);
  });
}

int hk_run_predict(const hk_predict_request* request) {
  if (request == nullptr || request->out_dir == nullptr || request->geometry == nullptr ||
      request->spectrum == nullptr) {
    g_last_error = "request has NULL paths";
    return 4;
  }
  return command_guard([&] {
    commands::PredictRequest r;
    r.geometry = request->geometry;
    r.spectrum = request->spectrum;
    r.voltages.assign(request->voltages, request->voltages + request->n_voltages);
    r.n_points = request->n_points;
    r.alpha_min = request->alpha_min;
    r.out_dir = request->out_dir;
    return commands::run_predict(r);
  });
}

int hk_run_kinetics(const hk_kinetics_request* request) {
  if (request == nullptr || request->out_dir == nullptr || request->trace == nullptr) {
    g_last_error = "request has NULL paths";
    return 4;
  }
  return command_guard([&] {
    commands::KineticsRequest r;
    r.trace = request->trace;
    if (request->sidecar) r.sidecar = request->sidecar;
    r.options = to_kinetics_options(request->options);
    r.out_dir = request->out_dir;
    return commands::run_kinetics(r);
  });
}

int hk_run_fit(const hk_fit_request* request) {
  if (request == nullptr || request->out_dir == nullptr || request->measurements == nullptr ||
      request->box == nullptr) {
    g_last_error = "request has NULL paths";
    return 4;
  }
  return command_guard([&] {
    commands::FitRequest r;
    r.measurements = request->measurements;
    r.box = request->box;
    r.seed = request->seed;
    r.restarts = request->restarts;
    r.threads = request->threads;
    r.fill_fraction = request->fill_fraction;
    if (request->geometry) r.geometry = request->geometry;
    r.out_dir = request->out_dir;
    return commands::run_fit(r);
  });
}

int hk_verify_manifest(const char* out_dir) {
  g_last_warnings.clear();
  if (out_dir == nullptr) {
    g_last_error = "out_dir is NULL";
    return -1;
  }
  try {
    g_last_warnings = commands::verify_manifest(out_dir);
    return static_cast<int>(g_last_warnings.size());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

size_t hk_last_warning_count(void) { return g_last_warnings.size(); }

const char* hk_last_warning(size_t index) {
  return index < g_last_warnings.size() ? g_last_warnings[index].c_str() : nullptr;
}

}  // extern "C"
