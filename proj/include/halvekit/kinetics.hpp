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

#ifndef HALVEKIT_KINETICS_HPP_
#define HALVEKIT_KINETICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace halvekit {

inline constexpr double kGravity = 9.81;  // m/s^2

struct TraceSample {
  double time = 0.0;         // s
  double contraction = 0.0;  // m, positive = shortening
};

// Contraction after a voltage step applied at t = 0, with the hanging load and
// actuator metadata needed for power figures.
struct DisplacementTrace {
  std::vector<TraceSample> samples;
  double load_kg = 0.0;
  double actuator_mass_kg = 0.0;
  double actuator_length_m = 0.0;
  double voltage = 0.0;

  void validate() const;
};

// Returns the trace unchanged when its sample period varies by at most 1%;
// otherwise linearly resamples it onto the median period.
DisplacementTrace make_uniform(const DisplacementTrace& trace);

// Smoothed contraction and its first two derivatives, all taken from the local
// fitted polynomials.
struct SmoothedTrace {
  std::vector<double> time;
  std::vector<double> position;      // m
  std::vector<double> velocity;      // m/s
  std::vector<double> acceleration;  // m/s^2
  double spacing = 0.0;              // s
};

SmoothedTrace smooth(const DisplacementTrace& trace, int window = 17, int order = 3);

struct WindowConfig {
  double start_fraction = 0.02;   // motion starts above this share of steady state
  double settle_band = 0.02;      // settled once within +/- this share for good
  double steady_tail = 0.10;      // steady value = mean over this trailing share
  double noise_floor_m = 1e-6;    // steady values below this mean no motion
};

struct ActuationWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  double steady_contraction = 0.0;  // m
  std::size_t first = 0;            // sample index of t_start
  std::size_t last = 0;             // sample index of t_end
};

ActuationWindow actuation_window(const SmoothedTrace& trace, const WindowConfig& config = {});

// Peak velocity over the window as a percentage of actuator length per second.
double peak_strain_rate(const SmoothedTrace& trace, const ActuationWindow& window,
                        double actuator_length_m);

struct PowerSeries {
  std::vector<double> time;
  std::vector<double> specific_power;  // W/kg
  double peak = 0.0;
};

// m_load (a + g) v / m_act over the window.
PowerSeries specific_power_series(const SmoothedTrace& trace, const ActuationWindow& window,
                                  double load_kg, double actuator_mass_kg);

// Trapezoidal integral of the power series divided by its duration.
double avg_specific_power(const PowerSeries& series);

struct KineticReport {
  double peak_strain_rate = 0.0;     // %/s
  double peak_specific_power = 0.0;  // W/kg
  double avg_specific_power = 0.0;   // W/kg
  double t_start = 0.0;
  double t_end = 0.0;
  double steady_strain = 0.0;        // fraction of actuator length
};

struct KineticsOptions {
  int window = 17;
  int order = 3;
  WindowConfig detection;
};

struct KineticAnalysis {
  SmoothedTrace smoothed;
  ActuationWindow window;
  PowerSeries power;
  KineticReport report;
};

// Full pipeline: resample if needed, smooth, detect the window, report.
KineticAnalysis analyze_trace(const DisplacementTrace& trace, const KineticsOptions& options = {});

// Percentage drop between the mean steady strain of the first and last
// `window` cycles.
double durability_decline(std::span<const double> cycle_strains, std::size_t window = 10);

}  // namespace halvekit

#endif  // HALVEKIT_KINETICS_HPP_
