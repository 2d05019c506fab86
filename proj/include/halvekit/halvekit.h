/* Copyright 2026 The halvekit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libhalvekit.
 *
 * Every fallible call returns an hk_status; on failure hk_last_error() holds a
 * message for the calling thread until its next failing call. Objects behind
 * opaque handles are immutable once created and owned by the caller, who
 * releases them with the matching *_destroy function. All quantities are SI.
 */
#ifndef HALVEKIT_H_
#define HALVEKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HK_API __declspec(dllexport)
#else
#define HK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hk_status {
  HK_OK = 0,
  HK_ERR_INVALID_ARGUMENT = 1,
  HK_ERR_INGEST = 2,
  HK_ERR_IO = 3,
  HK_ERR_NO_DISCHARGE_BRANCH = 10,
  HK_ERR_NON_MONOTONE_BRANCH = 11,
  HK_ERR_ZERO_FIELD = 12,
  HK_ERR_MIXED_MATERIAL = 13,
  HK_ERR_DUPLICATE_AMPLITUDE = 14,
  HK_ERR_EMPTY_SPECTRUM = 15,
  HK_ERR_OVERFILLED = 20,
  HK_ERR_DEGENERATE_ANGLE = 21,
  HK_ERR_ZERO_MASS = 22,
  HK_ERR_ZERO_POWER = 23,
  HK_ERR_TRACE_TOO_SHORT = 30,
  HK_ERR_NO_MOTION_DETECTED = 31,
  HK_ERR_EMPTY_INPUT = 32,
  HK_ERR_INSUFFICIENT_DATA = 40,
  HK_ERR_OUT_OF_DOMAIN = 41,
  HK_ERR_DOMAIN_MISMATCH = 42,
  HK_ERR_NON_CONVERGENCE = 43,
  HK_ERR_NULL_POINTER = 98,
  HK_ERR_INTERNAL = 99
} hk_status;

HK_API const char* hk_version(void);
HK_API const char* hk_last_error(void);
HK_API const char* hk_status_name(hk_status status);
/* Process exit code for a status: 0, 2 ingest, 3 numerical, 4 precondition. */
HK_API int hk_exit_code(hk_status status);

/* ---- dielectric ------------------------------------------------------- */

typedef struct hk_spectrum hk_spectrum;

HK_API hk_status hk_spectrum_create(const double* fields, const double* eps_eff, size_t n,
                                    double frequency_hz, const char* material,
                                    hk_spectrum** out);
/* CSV `E_V_per_m,eps_eff` with optional JSON sidecar. */
HK_API hk_status hk_spectrum_load(const char* csv_path, hk_spectrum** out);
/* One spectrum point per D-E loop CSV. A NaN frequency or NULL material is
 * read from each loop's sidecar. */
HK_API hk_status hk_spectrum_from_loops(const char* const* csv_paths, size_t n,
                                        double frequency_hz, const char* material,
                                        hk_spectrum** out);
HK_API void hk_spectrum_destroy(hk_spectrum* spectrum);
HK_API size_t hk_spectrum_size(const hk_spectrum* spectrum);
HK_API hk_status hk_spectrum_point(const hk_spectrum* spectrum, size_t index, double* field,
                                   double* eps_eff);
HK_API hk_status hk_spectrum_lookup(const hk_spectrum* spectrum, double field, double* eps_eff,
                                    int* clamped);

/* Energy density of an already extracted discharge branch, J/m^3. */
HK_API hk_status hk_energy_density(const double* fields, const double* displacements, size_t n,
                                   double* out);
/* Extracts the discharge branch of a raw loop and returns its amplitude and
 * effective permittivity. */
HK_API hk_status hk_loop_permittivity(const double* fields, const double* displacements,
                                      size_t n, double* amplitude, double* eps_eff);

/* ---- actuator model --------------------------------------------------- */

typedef struct hk_geometry {
  double width_m;
  double pouch_length_m;
  double electrode_length_m;
  double dielectric_thickness_m;
  double fill_fraction;
  int num_pouches;
  double actuator_mass_kg;
} hk_geometry;

typedef struct hk_zip_state {
  double strain;
  double unzipped_length_m;
  double zipped_length_m;
} hk_zip_state;

typedef struct hk_budget {
  double average_power_w;
  double runtime_h;
} hk_budget;

typedef struct hk_curve hk_curve;

/* Zeroed dimensions, fill 0.95, one pouch. */
HK_API void hk_geometry_init(hk_geometry* geom);
HK_API hk_status hk_geometry_load(const char* json_path, hk_geometry* out);

HK_API hk_status hk_capacitance(const hk_geometry* geom, double eps_r, double zipped_fraction,
                                double* out);
HK_API hk_status hk_electrical_energy(double capacitance_f, double voltage, double* out);
HK_API hk_status hk_voltage_reduction_ratio(double t_ref_m, double eps_ref, double t_new_m,
                                            const hk_spectrum* spectrum, double field_new,
                                            double* out);
HK_API hk_status hk_fill_volume(const hk_geometry* geom, double* out);
HK_API hk_status hk_rest_angle(const hk_geometry* geom, double* out);
HK_API hk_status hk_zip_geometry(const hk_geometry* geom, double alpha, hk_zip_state* out);
HK_API hk_status hk_force_at(const hk_geometry* geom, const hk_spectrum* spectrum,
                             double voltage, double alpha, double* out);
HK_API hk_status hk_force_strain_curve(const hk_geometry* geom, const hk_spectrum* spectrum,
                                       double voltage, int n_points, double alpha_min,
                                       hk_curve** out);
HK_API hk_status hk_actuator_energy_density(const hk_curve* curve, const hk_geometry* geom,
                                            double* out);
/* A zero battery energy skips the runtime. */
HK_API hk_status hk_supply_budget(double capacitance_f, double voltage, double frequency_hz,
                                  double idle_power_w, double converter_efficiency,
                                  double battery_energy_wh, hk_budget* out);

HK_API hk_status hk_curve_create(const double* strain, const double* force, size_t n,
                                 double voltage, int is_measurement, hk_curve** out);
HK_API void hk_curve_destroy(hk_curve* curve);
HK_API size_t hk_curve_size(const hk_curve* curve);
HK_API hk_status hk_curve_point(const hk_curve* curve, size_t index, double* strain,
                                double* force);

/* ---- kinetics --------------------------------------------------------- */

typedef struct hk_trace_meta {
  double load_kg;
  double actuator_mass_kg;
  double actuator_length_m;
  double voltage;
} hk_trace_meta;

typedef struct hk_kinetics_options {
  int window;
  int order;
  double start_fraction;
  double settle_band;
  double steady_tail;
  double noise_floor_m;
} hk_kinetics_options;

typedef struct hk_kinetic_report {
  double peak_strain_rate;    /* %/s */
  double peak_specific_power; /* W/kg */
  double avg_specific_power;  /* W/kg */
  double t_start;
  double t_end;
  double steady_strain;
} hk_kinetic_report;

HK_API void hk_kinetics_options_init(hk_kinetics_options* options);
/* options may be NULL for the defaults. */
HK_API hk_status hk_analyze_trace(const double* time, const double* contraction, size_t n,
                                  const hk_trace_meta* meta, const hk_kinetics_options* options,
                                  hk_kinetic_report* out);
HK_API hk_status hk_durability_decline(const double* cycle_strains, size_t n, size_t window,
                                       double* out);

/* ---- system identification -------------------------------------------- */

typedef struct hk_param_bound {
  const char* name; /* w, t, eps0, eps_r, V, alpha0, Le, Lp */
  double min;
  double max;
  double initial;
} hk_param_bound;

typedef struct hk_fit_options {
  int restarts;
  int max_iterations;
  double objective_tolerance;
  int curve_knots;
  double fill_fraction;
  int threads;
} hk_fit_options;

typedef struct hk_fit hk_fit;

HK_API void hk_fit_options_init(hk_fit_options* options);
HK_API hk_status hk_fit_force_strain(const hk_curve* data, const hk_param_bound* bounds,
                                     size_t n_bounds, uint64_t seed,
                                     const hk_fit_options* options, hk_fit** out);
HK_API void hk_fit_destroy(hk_fit* fit);
/* Writes the 8 fitted parameters in the order listed for hk_param_bound. */
HK_API hk_status hk_fit_parameters(const hk_fit* fit, double* out8);
HK_API hk_status hk_fit_rmse(const hk_fit* fit, double* out);
HK_API hk_status hk_fit_status(const hk_fit* fit, int* iterations, double* final_objective,
                               int* converged);
/* Borrowed; valid until the fit is destroyed. */
HK_API const hk_curve* hk_fit_curve(const hk_fit* fit);
HK_API hk_status hk_fit_energy_density(hk_fit* fit, const hk_geometry* geom, double* out);
/* Caller frees the string with hk_string_free. */
HK_API hk_status hk_fit_to_json(const hk_fit* fit, char** out);
HK_API void hk_string_free(char* s);

HK_API hk_status hk_closed_form_eval(double strain_percent, double* force, int* negative);
HK_API hk_status hk_validate_closed_form(const hk_curve* curve, double* out);

/* ---- batch commands --------------------------------------------------- */
/* Each returns a process exit code and writes manifest.json into out_dir.
 * On a non-zero code hk_last_error() describes the failure; warnings of the
 * last command on this thread are available through hk_last_warning(). */

typedef struct hk_permittivity_request {
  const char* const* de_files;
  size_t n_files;
  double frequency_hz; /* NaN: from sidecar */
  const char* material; /* NULL: from sidecar */
  const char* out_dir;
} hk_permittivity_request;

typedef struct hk_predict_request {
  const char* geometry;
  const char* spectrum;
  const double* voltages;
  size_t n_voltages;
  int n_points;
  double alpha_min;
  const char* out_dir;
} hk_predict_request;

typedef struct hk_kinetics_request {
  const char* trace;
  const char* sidecar; /* NULL: trace path with .json extension */
  hk_kinetics_options options;
  const char* out_dir;
} hk_kinetics_request;

typedef struct hk_fit_request {
  const char* measurements;
  const char* box;
  uint64_t seed;
  int restarts;
  int threads;
  double fill_fraction;
  const char* geometry; /* NULL: from the measurement sidecar */
  const char* out_dir;
} hk_fit_request;

HK_API int hk_run_permittivity(const hk_permittivity_request* request);
HK_API int hk_run_predict(const hk_predict_request* request);
HK_API int hk_run_kinetics(const hk_kinetics_request* request);
HK_API int hk_run_fit(const hk_fit_request* request);
/* Returns the number of mismatching files (0: verified) or -1 on error. */
HK_API int hk_verify_manifest(const char* out_dir);

HK_API size_t hk_last_warning_count(void);
HK_API const char* hk_last_warning(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* HALVEKIT_H_ */
