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

#include "halvekit/sysid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "halvekit/error.hpp"

namespace halvekit {

std::array<double, kNumModelParameters> ModelParameters::to_array() const {
  return {width_m, thickness_m, eps0, eps_r, voltage, alpha0, electrode_length_m, pouch_length_m};
}

ModelParameters ModelParameters::from_array(std::span<const double, kNumModelParameters> v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

ParameterBox::ParameterBox(std::vector<ParameterBound> bounds) {
  std::array<bool, kNumModelParameters> seen{};
  for (auto& b : bounds) {
    const auto it = std::find(kParameterNames.begin(), kParameterNames.end(), b.name);
    require(it != kParameterNames.end(), ErrorCode::kInvalidArgument,
            "unknown fit parameter '" + b.name + "'");
    const auto i = static_cast<std::size_t>(it - kParameterNames.begin());
    require(!seen[i], ErrorCode::kInvalidArgument, "fit parameter '" + b.name + "' given twice");
    require(std::isfinite(b.min) && std::isfinite(b.max) && b.min <= b.max,
            ErrorCode::kInvalidArgument, "bounds of '" + b.name + "' must satisfy min <= max");
    require(b.initial >= b.min && b.initial <= b.max, ErrorCode::kInvalidArgument,
            "initial value of '" + b.name + "' lies outside its bounds");
    seen[i] = true;
    bounds_[i] = std::move(b);
  }
  for (std::size_t i = 0; i < kNumModelParameters; ++i) {
    require(seen[i], ErrorCode::kInvalidArgument,
            "missing bounds for fit parameter '" + std::string(kParameterNames[i]) + "'");
  }
}

ParameterBox ParameterBox::around(const ModelParameters& centre, double rel_halfwidth) {
  const auto values = centre.to_array();
  std::vector<ParameterBound> bounds;
  for (std::size_t i = 0; i < kNumModelParameters; ++i) {
    const double h = (kParameterNames[i] == "eps0" ? 1e-3 : rel_halfwidth) * std::abs(values[i]);
    bounds.push_back({std::string(kParameterNames[i]), values[i] - h, values[i] + h, values[i]});
  }
  return ParameterBox(std::move(bounds));
}

double ParameterBox::to_physical(std::size_t i, double unit) const {
  const auto& b = bounds_[i];
  return b.min + std::clamp(unit, 0.0, 1.0) * (b.max - b.min);
}

double ParameterBox::to_unit(std::size_t i, double physical) const {
  const auto& b = bounds_[i];
  if (b.max == b.min) return 0.0;
  return std::clamp((physical - b.min) / (b.max - b.min), 0.0, 1.0);
}

ModelParameters ParameterBox::initial() const {
  std::array<double, kNumModelParameters> v{};
  for (std::size_t i = 0; i < kNumModelParameters; ++i) v[i] = bounds_[i].initial;
  return ModelParameters::from_array(v);
}

namespace {

// One candidate parameter set with its reachable strain range precomputed.
class ModelInstance {
 public:
  static std::optional<ModelInstance> make(const ModelParameters& p, double fill_fraction) {
    ModelInstance m;
    m.params_ = p;
    m.geom_.width_m = p.width_m;
    m.geom_.pouch_length_m = p.pouch_length_m;
    m.geom_.electrode_length_m = p.electrode_length_m;
    m.geom_.dielectric_thickness_m = p.thickness_m;
    m.geom_.fill_fraction = fill_fraction;
    if (!(p.width_m > 0.0 && p.thickness_m > 0.0 && p.electrode_length_m > 0.0 &&
          p.electrode_length_m < p.pouch_length_m && p.alpha0 > 0.0 && p.alpha0 < kHalfPi &&
          p.voltage >= 0.0 && fill_fraction >= 0.0 && fill_fraction <= 1.0)) {
      return std::nullopt;
    }
    try {
      m.alpha_lo_ = std::max(p.alpha0, rest_angle(m.geom_));
      m.strain_lo_ = m.strain(m.alpha_lo_);
      m.strain_hi_ = m.strain(kHalfPi);
    } catch (const Error&) {
      return std::nullopt;
    }
    m.field_ = p.voltage / p.thickness_m;
    return m;
  }

  double strain(double alpha) const { return zip_geometry(geom_, ZipAngle(alpha)).strain; }

  double force(double alpha) const {
    return zipping_force(params_.width_m, params_.thickness_m, params_.eps0, params_.eps_r,
                         field_, alpha);
  }

  // Opening angle reaching the given strain, clamped to the reachable range.
  double angle_for(double s) const {
    if (s <= strain_lo_) return alpha_lo_;
    if (s >= strain_hi_) return kHalfPi;
    std::uintmax_t max_iter = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(
        [&](double x) { return strain(x) - s; }, alpha_lo_, kHalfPi, strain_lo_ - s,
        strain_hi_ - s, boost::math::tools::eps_tolerance<double>(48), max_iter);
    return 0.5 * (a + b);
  }

  double force_at_strain(double s) const {
    if (s >= strain_hi_) return 0.0;
    return force(angle_for(s));
  }

  double strain_lo() const { return strain_lo_; }
  double strain_hi() const { return strain_hi_; }

 private:
  ModelParameters params_;
  ActuatorGeometry geom_;
  double alpha_lo_ = 0.0;
  double strain_lo_ = 0.0;
  double strain_hi_ = 0.0;
  double field_ = 0.0;
};

constexpr double kInfeasibleObjective = 1e30;

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

constexpr std::array<std::uint64_t, kNumModelParameters> kHaltonBases = {2, 3, 5, 7, 11, 13, 17, 19};

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead on the unit cube; trial points are projected onto the box. The
// simplex is rebuilt around the best vertex after each collapse until a
// rebuild no longer improves the objective.
template <typename Objective>
LocalResult nelder_mead(const Objective& f, std::vector<double> x0, int max_iterations,
                        double tolerance) {
  const std::size_t n = x0.size();
  auto project = [](std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  };
  project(x0);

  LocalResult out{x0, f(x0), 0, false};
  double step = 0.1;
  while (out.iterations < max_iterations) {
    std::vector<std::vector<double>> simplex(n + 1, out.x);
    std::vector<double> values(n + 1, out.value);
    for (std::size_t i = 0; i < n; ++i) {
      auto& v = simplex[i + 1];
      v[i] += v[i] + step <= 1.0 ? step : -step;
      values[i + 1] = f(v);
    }

    bool collapsed = false;
    while (out.iterations < max_iterations) {
      ++out.iterations;
      std::vector<std::size_t> order(n + 1);
      for (std::size_t i = 0; i <= n; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[n - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
        }
      }
      if (values[worst] - values[best] <= tolerance || diameter <= 1e-12) {
        collapsed = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
      }
      auto along = [&](double coef) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) {
          p[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
        }
        project(p);
        return p;
      };

      auto reflected = along(-1.0);
      const double fr = f(reflected);
      if (fr < values[best]) {
        auto expanded = along(-2.0);
        const double fe = f(expanded);
        if (fe < fr) {
          simplex[worst] = std::move(expanded);
          values[worst] = fe;
        } else {
          simplex[worst] = std::move(reflected);
          values[worst] = fr;
        }
        continue;
      }
      if (fr < values[second]) {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
        continue;
      }
      auto contracted = fr < values[worst] ? along(-0.5) : along(0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = std::move(contracted);
        values[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < n; ++k) {
          simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
        }
        values[i] = f(simplex[i]);
      }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const double improvement = out.value - *best_it;
    if (*best_it < out.value) {
      out.value = *best_it;
      out.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
    }
    if (collapsed && improvement <= tolerance) {
      out.converged = true;
      break;
    }
    step = std::max(step * 0.5, 1e-3);
  }
  return out;
}

int thread_count(const FitOptions& options) {
  int threads = options.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("HALVEKIT_THREADS"); env != nullptr) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(threads, 1, std::max(1, options.restarts));
}

ForceStrainCurve sample_fitted_curve(const ModelInstance& model, double strain_min,
                                     double strain_max, double voltage, int knots) {
  ForceStrainCurve curve;
  curve.voltage = voltage;
  curve.source = CurveSource::kModel;
  auto push = [&](double s, double f) {
    if (curve.points.empty() || s > curve.points.back().strain) {
      curve.points.push_back({s, std::max(0.0, f)});
    }
  };
  if (strain_min < model.strain_lo()) push(strain_min, model.force_at_strain(strain_min));
  const double a_lo = model.angle_for(strain_min);
  const double a_hi = model.angle_for(strain_max);
  for (int k = 0; k < knots; ++k) {
    const double a = knots == 1 ? a_lo : a_lo + (a_hi - a_lo) * k / (knots - 1);
    push(model.strain(a), model.force(a));
  }
  if (strain_max > model.strain_hi()) push(strain_max, 0.0);
  return curve;
}

}  // namespace

std::optional<double> model_force(const ModelParameters& params, double fill_fraction,
                                  double strain) {
  const auto model = ModelInstance::make(params, fill_fraction);
  if (!model) return std::nullopt;
  return model->force_at_strain(strain);
}

double fit_objective(const ModelParameters& params, double fill_fraction,
                     std::span<const ForceStrainPoint> data) {
  const auto model = ModelInstance::make(params, fill_fraction);
  if (!model) return kInfeasibleObjective;
  double sum = 0.0;
  for (const auto& p : data) {
    const double r = model->force_at_strain(p.strain) - p.force;
    sum += r * r;
  }
  return std::isfinite(sum) ? sum : kInfeasibleObjective;
}

FitResult fit_force_strain(const ForceStrainCurve& data, const ParameterBox& box,
                           std::uint64_t seed, const FitOptions& options) {
  require(data.points.size() >= 4, ErrorCode::kInsufficientData,
          "fit needs at least 4 measured points, got " + std::to_string(data.points.size()));
  data.validate();
  require(options.restarts >= 1 && options.max_iterations >= 0 && options.curve_knots >= 2,
          ErrorCode::kInvalidArgument, "invalid fit options");

  std::vector<std::size_t> free_dims;
  for (std::size_t i = 0; i < kNumModelParameters; ++i) {
    if (!box.is_fixed(i)) free_dims.push_back(i);
  }

  auto decode = [&](const std::vector<double>& unit) {
    std::array<double, kNumModelParameters> v{};
    for (std::size_t i = 0; i < kNumModelParameters; ++i) v[i] = box.bounds()[i].min;
    for (std::size_t k = 0; k < free_dims.size(); ++k) {
      v[free_dims[k]] = box.to_physical(free_dims[k], unit[k]);
    }
    return ModelParameters::from_array(v);
  };
  auto objective = [&](const std::vector<double>& unit) {
    return fit_objective(decode(unit), options.fill_fraction, data.points);
  };

  FitResult result;
  result.trace.seed = seed;

  std::vector<double> best_unit;
  if (free_dims.empty()) {
    result.trace.final_objective = objective({});
    result.trace.restart_objectives = {result.trace.final_objective};
    result.trace.best_so_far = {result.trace.final_objective};
    result.trace.restart_iterations = {0};
  } else {
    // Restart 0 starts from the box's initial values; later restarts from a
    // seeded, shifted Halton sequence.
    const auto restarts = static_cast<std::size_t>(options.restarts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> shift(free_dims.size());
    for (double& s : shift) s = uniform(rng);

    std::vector<std::vector<double>> starts(restarts, std::vector<double>(free_dims.size()));
    const ModelParameters init = box.initial();
    const auto init_values = init.to_array();
    for (std::size_t k = 0; k < free_dims.size(); ++k) {
      starts[0][k] = box.to_unit(free_dims[k], init_values[free_dims[k]]);
    }
    for (std::size_t r = 1; r < restarts; ++r) {
      for (std::size_t k = 0; k < free_dims.size(); ++k) {
        starts[r][k] = std::fmod(radical_inverse(r, kHaltonBases[k]) + shift[k], 1.0);
      }
    }

    std::vector<LocalResult> locals(restarts);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t r = next++; r < restarts; r = next++) {
        locals[r] = nelder_mead(objective, starts[r], options.max_iterations,
                                options.objective_tolerance);
      }
    };
    const int threads = thread_count(options);
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t best = 0;
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
      const auto& l = locals[r];
      result.trace.iterations += l.iterations;
      result.trace.restart_objectives.push_back(l.value);
      result.trace.restart_iterations.push_back(l.iterations);
      if (l.value < locals[best].value) best = r;
      running = std::min(running, l.value);
      result.trace.best_so_far.push_back(running);
    }
    best_unit = locals[best].x;
    result.trace.best_restart = static_cast<int>(best);
    result.trace.final_objective = locals[best].value;
    result.trace.converged = locals[best].converged;
  }

  result.parameters = decode(best_unit);
  result.residual_rmse =
      std::sqrt(result.trace.final_objective / static_cast<double>(data.points.size()));
  double max_force = 0.0;
  for (const auto& p : data.points) max_force = std::max(max_force, p.force);
  if (result.residual_rmse > options.acceptable_rmse_fraction * max_force) {
    result.trace.converged = false;
  }

  const auto model = ModelInstance::make(result.parameters, options.fill_fraction);
  require(model.has_value(), ErrorCode::kNonConvergence,
          "no feasible parameter set found inside the box");
  result.fitted_curve = sample_fitted_curve(*model, data.points.front().strain,
                                            data.points.back().strain, result.parameters.voltage,
                                            options.curve_knots);
  return result;
}

double energy_density_from_fit(FitResult& result, const ActuatorGeometry& geom) {
  result.measured_energy_density = actuator_energy_density(result.fitted_curve, geom);
  return result.measured_energy_density;
}

ClosedFormValue closed_form_eval(double strain_percent) {
  require(strain_percent >= 1.0 && strain_percent <= 10.0, ErrorCode::kOutOfDomain,
          "closed-form force is only valid for strains in [1, 10] %, got " +
              std::to_string(strain_percent) + " %");
  const double f = 2.81 / std::sin(0.17 * (strain_percent - 0.23)) - 2.86;
  return {f, f < 0.0};
}

double validate_closed_form(const ForceStrainCurve& curve) {
  const auto& p = curve.points;
  require(p.size() >= 2 && p.front().strain <= 0.01 && p.back().strain >= 0.10,
          ErrorCode::kDomainMismatch, "curve does not cover the [1, 10] % strain range");
  double worst = 0.0;
  std::size_t seg = 0;
  constexpr int kGrid = 100;
  for (int k = 0; k < kGrid; ++k) {
    const double pct = 1.0 + 9.0 * k / (kGrid - 1);
    const double s = pct / 100.0;
    while (seg + 2 < p.size() && p[seg + 1].strain < s) ++seg;
    const auto& a = p[seg];
    const auto& b = p[seg + 1];
    const double t = (s - a.strain) / (b.strain - a.strain);
    const double fitted = t >= 1.0 ? b.force : a.force + t * (b.force - a.force);
    worst = std::max(worst, std::abs(closed_form_eval(pct).force_n - fitted));
  }
  return worst;
}

double validate_closed_form(const FitResult& result) {
  return validate_closed_form(result.fitted_curve);
}

}  // namespace halvekit
