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

#include "halvekit/actuator_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "halvekit/error.hpp"

namespace halvekit {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// cos(a) / (1 - cos(a)) without cancellation at small angles.
double opening_ratio(double alpha) {
  const double s = std::sin(0.5 * alpha);
  return std::cos(alpha) / (2.0 * s * s);
}

double unzipped_arc_length(double volume_per_width, double alpha) {
  return std::sqrt(4.0 * alpha * alpha * volume_per_width / lens_area_factor(alpha));
}

}  // namespace

void ActuatorGeometry::validate() const {
  require(std::isfinite(width_m) && width_m > 0.0, ErrorCode::kInvalidArgument,
          "pouch width must be positive");
  require(std::isfinite(dielectric_thickness_m) && dielectric_thickness_m > 0.0,
          ErrorCode::kInvalidArgument, "dielectric thickness must be positive");
  require(std::isfinite(pouch_length_m) && std::isfinite(electrode_length_m) &&
              electrode_length_m > 0.0 && electrode_length_m < pouch_length_m,
          ErrorCode::kInvalidArgument, "electrode length must satisfy 0 < Le < Lp");
  require(fill_fraction >= 0.0 && fill_fraction <= 1.0, ErrorCode::kInvalidArgument,
          "fill fraction must lie in [0, 1]");
  require(num_pouches >= 1, ErrorCode::kInvalidArgument, "at least one pouch is required");
  require(std::isfinite(actuator_mass_kg) && actuator_mass_kg >= 0.0,
          ErrorCode::kInvalidArgument, "actuator mass must be non-negative");
}

DriveState DriveState::from_voltage(double voltage, double thickness_m) {
  require(voltage >= 0.0, ErrorCode::kInvalidArgument, "voltage must be non-negative");
  require(thickness_m > 0.0, ErrorCode::kInvalidArgument, "thickness must be positive");
  return {voltage, voltage / thickness_m};
}

ZipAngle::ZipAngle(double alpha) : alpha_(alpha) {
  require(alpha > 0.0, ErrorCode::kDegenerateAngle, "opening angle must be positive");
  require(alpha <= kHalfPi * (1.0 + 1e-15), ErrorCode::kInvalidArgument,
          "opening angle must not exceed pi/2");
  alpha_ = std::min(alpha, kHalfPi);
}

void ForceStrainCurve::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    require(std::isfinite(p.strain) && std::isfinite(p.force) && p.force >= 0.0,
            ErrorCode::kInvalidArgument,
            "force/strain point " + std::to_string(i) + " must be finite with force >= 0");
    if (i == 0) continue;
    require(p.strain > points[i - 1].strain, ErrorCode::kInvalidArgument,
            "strain must be strictly increasing");
    if (source == CurveSource::kModel) {
      require(p.force <= points[i - 1].force, ErrorCode::kInvalidArgument,
              "model force must be non-increasing in strain");
    }
  }
}

double capacitance(const ActuatorGeometry& geom, double eps_r, double zipped_fraction) {
  geom.validate();
  require(zipped_fraction >= 0.0 && zipped_fraction <= 1.0, ErrorCode::kInvalidArgument,
          "zipped fraction must lie in [0, 1]");
  const double area = zipped_fraction * geom.electrode_length_m * geom.width_m;
  return geom.num_pouches * area * kVacuumPermittivity * eps_r / geom.dielectric_thickness_m;
}

double electrical_energy(double capacitance_f, double voltage) {
  require(capacitance_f >= 0.0 && voltage >= 0.0, ErrorCode::kInvalidArgument,
          "capacitance and voltage must be non-negative");
  return 0.5 * capacitance_f * voltage * voltage;
}

double voltage_reduction_ratio(double t_ref_m, double eps_ref, double t_new_m,
                               const PermittivitySpectrum& spectrum, double field_new) {
  require(t_ref_m > 0.0 && t_new_m > 0.0, ErrorCode::kInvalidArgument,
          "thicknesses must be positive");
  require(eps_ref > 0.0, ErrorCode::kInvalidArgument, "reference permittivity must be positive");
  const double eps_new = spectrum_lookup(spectrum, field_new).eps_eff;
  return std::sqrt(t_ref_m / (eps_ref * t_new_m) * eps_new);
}

double fill_volume(const ActuatorGeometry& geom) {
  geom.validate();
  const double free_length = geom.pouch_length_m - geom.electrode_length_m;
  return geom.fill_fraction * geom.width_m * free_length * free_length / std::numbers::pi;
}

double lens_area_factor(double alpha) {
  const double x = 2.0 * alpha;
  if (alpha < 1e-2) {
    const double x3 = x * x * x;
    return x3 / 6.0 - x3 * x * x / 120.0 + x3 * x3 * x / 5040.0;
  }
  return x - std::sin(x);
}

double rest_angle(const ActuatorGeometry& geom) {
  const double volume_per_width = fill_volume(geom) / geom.width_m;
  if (volume_per_width <= 0.0) return 0.0;
  const double lp = geom.pouch_length_m;
  auto excess = [&](double a) { return unzipped_arc_length(volume_per_width, a) - lp; };
  if (excess(kHalfPi) >= 0.0) {
    fail(ErrorCode::kOverfilled, "fill volume does not fit the pouch at any opening angle");
  }
  double lo = 1e-9;
  if (excess(lo) <= 0.0) return lo;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      excess, lo, kHalfPi, boost::math::tools::eps_tolerance<double>(50), max_iter);
  (void)a;
  return b;  // feasible side of the bracket
}

ZipState zip_geometry(const ActuatorGeometry& geom, ZipAngle angle) {
  const double alpha = angle.radians();
  const double lp = geom.pouch_length_m;
  const double le = geom.electrode_length_m;
  const double volume_per_width = fill_volume(geom) / geom.width_m;

  double arc = unzipped_arc_length(volume_per_width, alpha);
  if (arc > lp * (1.0 + 1e-9)) {
    fail(ErrorCode::kOverfilled, "oil volume needs an unzipped length of " +
                                     std::to_string(arc) + " m at alpha = " +
                                     std::to_string(alpha) + " rad");
  }
  // Once the electrode is fully zipped the free film keeps its length and only
  // its curvature changes.
  arc = std::clamp(arc, lp - le, lp);
  const double zipped = std::clamp(lp - arc, 0.0, le);
  const double length = zipped + arc * sinc(alpha);
  return {(lp - length) / lp, arc, zipped};
}

double zipping_force(double width_m, double thickness_m, double eps0, double eps,
                     double field, double alpha) {
  require(alpha > 0.0, ErrorCode::kDegenerateAngle,
          "zipping force diverges at a zero opening angle");
  if (alpha >= kHalfPi) return 0.0;
  return width_m * thickness_m * opening_ratio(alpha) * eps0 * eps * field * field;
}

double force_at(const ActuatorGeometry& geom, const PermittivitySpectrum& spectrum,
                double voltage, ZipAngle alpha) {
  geom.validate();
  const auto drive = DriveState::from_voltage(voltage, geom.dielectric_thickness_m);
  const double eps = spectrum_lookup(spectrum, drive.field).eps_eff;
  return zipping_force(geom.width_m, geom.dielectric_thickness_m, kVacuumPermittivity, eps,
                       drive.field, alpha.radians());
}

SweepRange sweep_range(const ActuatorGeometry& geom, double alpha_min) {
  require(alpha_min > 0.0 && alpha_min < kHalfPi, ErrorCode::kInvalidArgument,
          "alpha_min must lie in (0, pi/2)");
  return {std::max(alpha_min, rest_angle(geom)), kHalfPi};
}

namespace {

template <typename ForceFn>
ForceStrainCurve sweep(const ActuatorGeometry& geom, double voltage, int n_points,
                       double alpha_min, ForceFn&& force_fn) {
  geom.validate();
  require(n_points >= 2, ErrorCode::kInvalidArgument, "a curve needs at least 2 points");
  require(voltage >= 0.0, ErrorCode::kInvalidArgument, "voltage must be non-negative");
  const SweepRange range = sweep_range(geom, alpha_min);

  ForceStrainCurve curve;
  curve.voltage = voltage;
  curve.source = CurveSource::kModel;
  curve.points.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double a = i + 1 == n_points
                         ? range.alpha_hi
                         : range.alpha_lo + (range.alpha_hi - range.alpha_lo) * i / (n_points - 1);
    const ZipState state = zip_geometry(geom, ZipAngle(a));
    curve.points.push_back({state.strain, force_fn(a)});
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const auto& p, const auto& q) { return p.strain < q.strain; });
  return curve;
}

}  // namespace

ForceStrainCurve force_strain_curve(const ActuatorGeometry& geom,
                                    const PermittivitySpectrum& spectrum, double voltage,
                                    int n_points, double alpha_min) {
  const auto drive = DriveState::from_voltage(voltage, geom.dielectric_thickness_m);
  const LookupResult eps = spectrum_lookup(spectrum, drive.field);
  ForceStrainCurve curve = sweep(geom, voltage, n_points, alpha_min, [&](double a) {
    return zipping_force(geom.width_m, geom.dielectric_thickness_m, kVacuumPermittivity,
                         eps.eps_eff, drive.field, a);
  });
  curve.field_clamped = eps.clamped;
  return curve;
}

ForceStrainCurve force_strain_curve_constant(const ActuatorGeometry& geom, double eps_r,
                                             double voltage, int n_points, double alpha_min) {
  const double scale =
      geom.width_m * kVacuumPermittivity * eps_r * voltage * voltage / geom.dielectric_thickness_m;
  return sweep(geom, voltage, n_points, alpha_min, [&](double a) {
    if (a >= kHalfPi) return 0.0;
    return scale * std::cos(a) / (1.0 - std::cos(a));
  });
}

double actuator_energy_density(const ForceStrainCurve& curve, const ActuatorGeometry& geom) {
  geom.validate();
  require(curve.points.size() >= 2, ErrorCode::kInvalidArgument,
          "energy density needs at least 2 curve points");
  require(geom.actuator_mass_kg > 0.0, ErrorCode::kZeroMass, "actuator mass must be positive");
  const double stroke_per_strain = geom.pouch_length_m * geom.num_pouches;
  double work = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i - 1];
    const auto& q = curve.points[i];
    work += 0.5 * (p.force + q.force) * (q.strain - p.strain) * stroke_per_strain;
  }
  return work / geom.actuator_mass_kg;
}

SupplyBudget supply_budget(double capacitance_f, double voltage, double frequency_hz,
                           double idle_power_w, double converter_efficiency,
                           double battery_energy_wh) {
  require(capacitance_f >= 0.0 && voltage >= 0.0 && frequency_hz >= 0.0 &&
              idle_power_w >= 0.0 && battery_energy_wh >= 0.0,
          ErrorCode::kInvalidArgument, "budget inputs must be non-negative");
  require(converter_efficiency > 0.0 && converter_efficiency <= 1.0,
          ErrorCode::kInvalidArgument, "converter efficiency must lie in (0, 1]");
  SupplyBudget budget;
  // Two half-cycles per period, each charging 0.5 C V^2.
  budget.average_power_w =
      idle_power_w + frequency_hz * capacitance_f * voltage * voltage / converter_efficiency;
  if (battery_energy_wh > 0.0) {
    require(budget.average_power_w > 0.0, ErrorCode::kZeroPower,
            "runtime is undefined at zero average power");
    budget.runtime_h = battery_energy_wh / budget.average_power_w;
  }
  return budget;
}

}  // namespace halvekit
