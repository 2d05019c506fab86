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

#ifndef HALVEKIT_DIELECTRIC_HPP_
#define HALVEKIT_DIELECTRIC_HPP_

#include <span>
#include <string>
#include <vector>

namespace halvekit {

// Vacuum permittivity, F/m.
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

struct DEPoint {
  double field = 0.0;         // E, V/m
  double displacement = 0.0;  // D, C/m^2
};

// One sampled D-E loop at a single drive frequency, in acquisition order.
struct DECurve {
  std::vector<DEPoint> samples;
  double frequency_hz = 0.0;
  std::string material;

  // Throws InvalidArgument on non-finite samples.
  void validate() const;
};

// Relative permittivity of a linear insulator (eps_r >= 1).
class DielectricConstant {
 public:
  explicit DielectricConstant(double eps_r);
  double value() const noexcept { return eps_r_; }

 private:
  double eps_r_;
};

struct PermittivityPoint {
  double field_amplitude = 0.0;  // V/m
  double eps_eff = 0.0;
};

struct LookupResult {
  double eps_eff = 0.0;
  bool clamped = false;  // E fell outside the tabulated range
};

// Effective permittivity tabulated against field amplitude at one frequency.
// Immutable once constructed; amplitudes are strictly increasing and every
// eps_eff is positive.
class PermittivitySpectrum {
 public:
  PermittivitySpectrum() = default;
  PermittivitySpectrum(std::vector<PermittivityPoint> points, double frequency_hz,
                       std::string material);

  // Two-knot spectrum with the same value everywhere.
  static PermittivitySpectrum flat(double eps_eff, double field_lo = 0.0,
                                   double field_hi = 1e10);

  const std::vector<PermittivityPoint>& points() const noexcept { return points_; }
  double frequency_hz() const noexcept { return frequency_hz_; }
  const std::string& material() const noexcept { return material_; }
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::vector<PermittivityPoint> points_;
  double frequency_hz_ = 0.0;
  std::string material_;
};

// Descending-field path from the sample of maximum D to the sample of minimum
// non-negative E that follows it. Samples that would make D increase along the
// path are dropped, never reordered.
DECurve extract_discharge_branch(const DECurve& curve);

// Trapezoidal integral of E dD along a branch with monotone D, taken from the
// low-D end to the high-D end. J/m^3.
double energy_density(const DECurve& branch);

// eps_eff such that 0.5 * eps_eff * eps0 * E_amp^2 equals the branch energy
// density, where E_amp is the largest field on the branch.
PermittivityPoint effective_permittivity(const DECurve& branch);

// One point per loop, sorted by field amplitude. Every loop must come from the
// same material at the same frequency.
PermittivitySpectrum build_spectrum(std::span<const DECurve> curves);

// Piecewise-linear in E, clamped to the endpoint values outside the table.
LookupResult spectrum_lookup(const PermittivitySpectrum& spectrum, double field);

}  // namespace halvekit

#endif  // HALVEKIT_DIELECTRIC_HPP_
