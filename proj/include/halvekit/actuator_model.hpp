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

#ifndef HALVEKIT_ACTUATOR_MODEL_HPP_
#define HALVEKIT_ACTUATOR_MODEL_HPP_

#include <numbers>
#include <vector>

#include "halvekit/dielectric.hpp"

namespace halvekit {

// Pouch and electrode dimensions of a zipping actuator. Lengths run along the
// loading axis except width.
struct ActuatorGeometry {
  double width_m = 0.0;
  double pouch_length_m = 0.0;
  double electrode_length_m = 0.0;
  double dielectric_thickness_m = 0.0;  // per side, electrode to oil
  double fill_fraction = 0.95;
  int num_pouches = 1;
  double actuator_mass_kg = 0.0;

  // Throws InvalidArgument unless 0 < Le < Lp, w, t > 0, 0 <= fill <= 1,
  // num_pouches >= 1 and mass >= 0.
  void validate() const;
};

// Applied voltage and the resulting field across one dielectric layer.
struct DriveState {
  double voltage = 0.0;
  double field = 0.0;

  static DriveState from_voltage(double voltage, double thickness_m);
};

// Half-angle subtended by the unzipped film arc, in (0, pi/2].
class ZipAngle {
 public:
  explicit ZipAngle(double alpha);
  double radians() const noexcept { return alpha_; }

 private:
  double alpha_;
};

enum class CurveSource { kModel, kMeasurement };

struct ForceStrainPoint {
  double strain = 0.0;  // fraction
  double force = 0.0;   // N
};

struct ForceStrainCurve {
  std::vector<ForceStrainPoint> points;
  double voltage = 0.0;
  CurveSource source = CurveSource::kModel;
  bool field_clamped = false;  // drive field fell outside the spectrum table

  // Strain strictly increasing, forces finite and non-negative; model curves
  // must also have non-increasing force.
  void validate() const;
};

struct ZipState {
  double strain = 0.0;
  double unzipped_length_m = 0.0;
  double zipped_length_m = 0.0;
};

// Lower bound for parametric sweeps of the opening angle.
inline constexpr double kMinSweepAngle = 1e-3;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Parallel-plate capacitance of the zipped electrode area, summed over pouches.
double capacitance(const ActuatorGeometry& geom, double eps_r, double zipped_fraction);

// 0.5 C V^2.
double electrical_energy(double capacitance_f, double voltage);

// Factor by which the drive voltage can drop when a reference dielectric
// (thickness t_ref, constant eps_ref) is replaced by one of thickness t_new
// whose effective permittivity at E_new is read from the spectrum.
double voltage_reduction_ratio(double t_ref_m, double eps_ref, double t_new_m,
                               const PermittivitySpectrum& spectrum, double field_new);

// Oil volume of one pouch: a fraction of the cylinder whose circumference is
// the two free film lengths.
double fill_volume(const ActuatorGeometry& geom);

// Lens cross-section factor (2a - sin 2a), with a series expansion near zero.
double lens_area_factor(double alpha);

// Smallest opening angle compatible with the fill volume: the unzipped arc
// length equals the whole pouch length.
double rest_angle(const ActuatorGeometry& geom);

// Strain and film lengths of one pouch at opening angle alpha. Throws
// Overfilled when the oil cannot fit with the given angle.
ZipState zip_geometry(const ActuatorGeometry& geom, ZipAngle alpha);

// Electrostatic zipping force, F = w t cos(a)/(1 - cos(a)) eps0 eps E^2.
// Exposed separately so callers can vary eps0 and thickness freely.
double zipping_force(double width_m, double thickness_m, double eps0, double eps,
                     double field, double alpha);

// Force at opening angle alpha with eps_eff read from the spectrum at E = V/t.
double force_at(const ActuatorGeometry& geom, const PermittivitySpectrum& spectrum,
                double voltage, ZipAngle alpha);

struct SweepRange {
  double alpha_lo = 0.0;
  double alpha_hi = kHalfPi;
};

// Angles swept by force_strain_curve: from max(alpha_min, rest angle) to pi/2.
SweepRange sweep_range(const ActuatorGeometry& geom, double alpha_min = kMinSweepAngle);

// Quasi-static force/strain prediction from n_points uniformly spaced angles.
ForceStrainCurve force_strain_curve(const ActuatorGeometry& geom,
                                    const PermittivitySpectrum& spectrum, double voltage,
                                    int n_points, double alpha_min = kMinSweepAngle);

// Same sweep with a constant relative permittivity, written in terms of the
// voltage rather than the field. Used as the reference for the spectrum path.
ForceStrainCurve force_strain_curve_constant(const ActuatorGeometry& geom, double eps_r,
                                             double voltage, int n_points,
                                             double alpha_min = kMinSweepAngle);

// Work over the contraction stroke divided by actuator mass, J/kg.
double actuator_energy_density(const ForceStrainCurve& curve, const ActuatorGeometry& geom);

struct SupplyBudget {
  double average_power_w = 0.0;
  double runtime_h = 0.0;
};

// Average electrical draw of a bipolar drive at f Hz plus idle power, and the
// battery runtime it implies. A zero battery energy skips the runtime.
SupplyBudget supply_budget(double capacitance_f, double voltage, double frequency_hz,
                           double idle_power_w, double converter_efficiency,
                           double battery_energy_wh);

}  // namespace halvekit

#endif  // HALVEKIT_ACTUATOR_MODEL_HPP_
