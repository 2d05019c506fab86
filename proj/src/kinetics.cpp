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

#include "halvekit/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "halvekit/error.hpp"
#include "halvekit/savitzky_golay.hpp"

namespace halvekit {

void DisplacementTrace::validate() const {
  require(samples.size() >= 2, ErrorCode::kTraceTooShort, "trace needs at least 2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require(std::isfinite(samples[i].time) && std::isfinite(samples[i].contraction),
            ErrorCode::kInvalidArgument, "trace sample " + std::to_string(i) + " is not finite");
    if (i > 0) {
      require(samples[i].time > samples[i - 1].time, ErrorCode::kInvalidArgument,
              "trace time must be strictly increasing (sample " + std::to_string(i) + ")");
    }
  }
  require(actuator_length_m > 0.0, ErrorCode::kInvalidArgument,
          "actuator length must be positive");
  require(actuator_mass_kg > 0.0, ErrorCode::kZeroMass, "actuator mass must be positive");
  require(load_kg > 0.0, ErrorCode::kInvalidArgument, "load mass must be positive");
}

DisplacementTrace make_uniform(const DisplacementTrace& trace) {
  trace.validate();
  const auto& s = trace.samples;
  std::vector<double> periods(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) periods[i - 1] = s[i].time - s[i - 1].time;
  std::vector<double> sorted = periods;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  const bool uniform = std::all_of(periods.begin(), periods.end(), [&](double dt) {
    return std::abs(dt - median) <= 0.01 * median;
  });
  if (uniform) return trace;

  DisplacementTrace out = trace;
  out.samples.clear();
  const double t0 = s.front().time;
  const auto count = static_cast<std::size_t>(std::floor((s.back().time - t0) / median + 1e-9)) + 1;
  out.samples.reserve(count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = t0 + static_cast<double>(i) * median;
    while (k + 2 < s.size() && s[k + 1].time < t) ++k;
    const double f = std::clamp((t - s[k].time) / (s[k + 1].time - s[k].time), 0.0, 1.0);
    out.samples.push_back({t, s[k].contraction + f * (s[k + 1].contraction - s[k].contraction)});
  }
  return out;
}

SmoothedTrace smooth(const DisplacementTrace& trace, int window, int order) {
  const SavitzkyGolayFilter filter(window, order);
  const DisplacementTrace uniform = make_uniform(trace);
  const auto& s = uniform.samples;
  require(s.size() >= static_cast<std::size_t>(window), ErrorCode::kTraceTooShort,
          "trace has " + std::to_string(s.size()) + " samples, filter window is " +
              std::to_string(window));

  SmoothedTrace out;
  out.spacing = (s.back().time - s.front().time) / static_cast<double>(s.size() - 1);
  std::vector<double> y(s.size());
  out.time.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.time[i] = s[i].time;
    y[i] = s[i].contraction;
  }
  out.position = filter.apply(y, 0, out.spacing);
  out.velocity = filter.apply(y, 1, out.spacing);
  out.acceleration = filter.apply(y, 2, out.spacing);
  return out;
}

ActuationWindow actuation_window(const SmoothedTrace& trace, const WindowConfig& config) {
  const auto& x = trace.position;
  const std::size_t n = x.size();
  require(n >= 2 && trace.time.size() == n, ErrorCode::kTraceTooShort,
          "smoothed trace is too short");
  require(config.steady_tail > 0.0 && config.steady_tail <= 1.0, ErrorCode::kInvalidArgument,
          "steady tail share must lie in (0, 1]");

  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(config.steady_tail * static_cast<double>(n))));
  const double steady =
      std::accumulate(x.end() - static_cast<std::ptrdiff_t>(tail), x.end(), 0.0) /
      static_cast<double>(tail);
  require(steady > config.noise_floor_m, ErrorCode::kNoMotionDetected,
          "steady contraction " + std::to_string(steady) + " m is below the noise floor");

  ActuationWindow w;
  w.steady_contraction = steady;
  const double start_level = config.start_fraction * steady;
  const auto first = std::find_if(x.begin(), x.end(), [&](double v) { return v > start_level; });
  require(first != x.end(), ErrorCode::kNoMotionDetected, "contraction never starts");
  w.first = static_cast<std::size_t>(first - x.begin());

  const double band = config.settle_band * steady;
  std::size_t last_out = 0;
  bool excursion = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x[i] - steady) > band) {
      last_out = i;
      excursion = true;
    }
  }
  w.last = excursion ? std::min(last_out + 1, n - 1) : 0;
  require(w.last > w.first, ErrorCode::kNoMotionDetected,
          "contraction settles before it starts");
  w.t_start = trace.time[w.first];
  w.t_end = trace.time[w.last];
  return w;
}

double peak_strain_rate(const SmoothedTrace& trace, const ActuationWindow& window,
                        double actuator_length_m) {
  require(actuator_length_m > 0.0, ErrorCode::kInvalidArgument,
          "actuator length must be positive");
  double peak = 0.0;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    peak = std::max(peak, trace.velocity[i]);
  }
  return peak / actuator_length_m * 100.0;
}

PowerSeries specific_power_series(const SmoothedTrace& trace, const ActuationWindow& window,
                                  double load_kg, double actuator_mass_kg) {
  require(actuator_mass_kg > 0.0, ErrorCode::kZeroMass, "actuator mass must be positive");
  PowerSeries series;
  for (std::size_t i = window.first; i <= window.last; ++i) {
    const double force = load_kg * (trace.acceleration[i] + kGravity);
    const double p = force * trace.velocity[i] / actuator_mass_kg;
    series.time.push_back(trace.time[i]);
    series.specific_power.push_back(p);
    series.peak = std::max(series.peak, p);
  }
  return series;
}

double avg_specific_power(const PowerSeries& series) {
  const auto& t = series.time;
  const auto& p = series.specific_power;
  require(t.size() >= 2 && t.size() == p.size(), ErrorCode::kInvalidArgument,
          "power series needs at least 2 samples");
  double work = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) work += 0.5 * (p[i] + p[i - 1]) * (t[i] - t[i - 1]);
  return work / (t.back() - t.front());
}

KineticAnalysis analyze_trace(const DisplacementTrace& trace, const KineticsOptions& options) {
  trace.validate();
  KineticAnalysis a;
  a.smoothed = smooth(trace, options.window, options.order);
  a.window = actuation_window(a.smoothed, options.detection);
  a.power = specific_power_series(a.smoothed, a.window, trace.load_kg, trace.actuator_mass_kg);
  a.report.peak_strain_rate = peak_strain_rate(a.smoothed, a.window, trace.actuator_length_m);
  a.report.peak_specific_power = a.power.peak;
  a.report.avg_specific_power = avg_specific_power(a.power);
  a.report.t_start = a.window.t_start;
  a.report.t_end = a.window.t_end;
  a.report.steady_strain = a.window.steady_contraction / trace.actuator_length_m;
  return a;
}

double durability_decline(std::span<const double> cycle_strains, std::size_t window) {
  require(cycle_strains.size() >= 2, ErrorCode::kEmptyInput,
          "durability decline needs at least 2 cycles");
  require(window >= 1, ErrorCode::kInvalidArgument, "averaging window must be >= 1");
  const std::size_t w = std::min(window, cycle_strains.size());
  const double first =
      std::accumulate(cycle_strains.begin(), cycle_strains.begin() + static_cast<std::ptrdiff_t>(w), 0.0) /
      static_cast<double>(w);
  const double last =
      std::accumulate(cycle_strains.end() - static_cast<std::ptrdiff_t>(w), cycle_strains.end(), 0.0) /
      static_cast<double>(w);
  require(first != 0.0, ErrorCode::kInvalidArgument, "initial strain is zero");
  return 100.0 * (first - last) / first;
}

}  // namespace halvekit
