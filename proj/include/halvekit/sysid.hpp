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

#ifndef HALVEKIT_SYSID_HPP_
#define HALVEKIT_SYSID_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halvekit/actuator_model.hpp"

namespace halvekit {

// Parameters of the zipping model that the fit may move, in canonical order.
inline constexpr std::size_t kNumModelParameters = 8;
inline constexpr std::array<std::string_view, kNumModelParameters> kParameterNames = {
    "w", "t", "eps0", "eps_r", "V", "alpha0", "Le", "Lp"};

struct ModelParameters {
  double width_m = 0.0;
  double thickness_m = 0.0;
  double eps0 = kVacuumPermittivity;
  double eps_r = 1.0;
  double voltage = 0.0;
  double alpha0 = kMinSweepAngle;  // smallest opening angle the curve may reach
  double electrode_length_m = 0.0;
  double pouch_length_m = 0.0;

  std::array<double, kNumModelParameters> to_array() const;
  static ModelParameters from_array(std::span<const double, kNumModelParameters> values);
};

struct ParameterBound {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double initial = 0.0;
};

// Search box over the model parameters. Normalized coordinates in [0, 1] map
// affinely onto [min, max]; a parameter with min == max is held fixed.
class ParameterBox {
 public:
  // Needs exactly one bound per name in kParameterNames, in any order.
  explicit ParameterBox(std::vector<ParameterBound> bounds);

  // Box of +/- rel_halfwidth around each value, with eps0 held to +/-0.1%.
  static ParameterBox around(const ModelParameters& centre, double rel_halfwidth);

  const std::array<ParameterBound, kNumModelParameters>& bounds() const noexcept {
    return bounds_;
  }
  bool is_fixed(std::size_t i) const { return bounds_[i].max == bounds_[i].min; }

  // Both maps clamp to the box.
  double to_physical(std::size_t i, double unit) const;
  double to_unit(std::size_t i, double physical) const;
  ModelParameters initial() const;

 private:
  std::array<ParameterBound, kNumModelParameters> bounds_;
};

struct FitOptions {
  int restarts = 16;
  int max_iterations = 5000;          // per restart
  double objective_tolerance = 1e-10;  // N^2
  int curve_knots = 32;
  double fill_fraction = 0.95;
  int threads = 0;  // 0: HALVEKIT_THREADS or the hardware concurrency
  // A fit whose RMSE exceeds this share of the largest measured force is
  // flagged as not converged.
  double acceptable_rmse_fraction = 0.1;
};

struct OptimizerTrace {
  int iterations = 0;
  double final_objective = 0.0;
  std::uint64_t seed = 0;
  bool converged = true;  // false: iteration cap hit or residual above threshold
  int best_restart = 0;
  std::vector<double> restart_objectives;
  std::vector<double> best_so_far;  // running minimum over restarts
  std::vector<int> restart_iterations;
};

struct FitResult {
  ModelParameters parameters;
  double residual_rmse = 0.0;  // N
  ForceStrainCurve fitted_curve;
  double measured_energy_density = 0.0;  // J/kg, filled by energy_density_from_fit
  OptimizerTrace trace;
};

// Forward model used by the fit: force at a given strain for one pouch.
// Strains below the reachable range get the force at the smallest angle;
// strains beyond full closure get zero. Returns nullopt for parameter sets
// that do not describe a valid pouch.
std::optional<double> model_force(const ModelParameters& params, double fill_fraction,
                                  double strain);

// Sum of squared force residuals against measured points.
double fit_objective(const ModelParameters& params, double fill_fraction,
                     std::span<const ForceStrainPoint> data);

FitResult fit_force_strain(const ForceStrainCurve& data, const ParameterBox& box,
                           std::uint64_t seed, const FitOptions& options = {});

// Work under the fitted curve per unit actuator mass; also stores it on the result.
double energy_density_from_fit(FitResult& result, const ActuatorGeometry& geom);

struct ClosedFormValue {
  double force_n = 0.0;
  bool negative = false;  // the expression dips below zero near 10 % strain
};

// Published symbolic-regression fit F(e) = 2.81 / sin(0.17 (e - 0.23)) - 2.86
// with e in percent, valid on [1, 10] %.
ClosedFormValue closed_form_eval(double strain_percent);

// Largest |closed form - curve| over 100 strains spanning [1, 10] %. The curve
// is interpolated linearly in strain and must cover that range.
double validate_closed_form(const ForceStrainCurve& curve);
double validate_closed_form(const FitResult& result);

}  // namespace halvekit

#endif  // HALVEKIT_SYSID_HPP_
