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

#include "halvekit/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "halvekit/error.hpp"

namespace halvekit {

void DECurve::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    require(std::isfinite(s.field) && std::isfinite(s.displacement),
            ErrorCode::kInvalidArgument,
            "D-E sample " + std::to_string(i) + " is not finite");
  }
}

DielectricConstant::DielectricConstant(double eps_r) : eps_r_(eps_r) {
  require(std::isfinite(eps_r) && eps_r >= 1.0, ErrorCode::kInvalidArgument,
          "relative permittivity must be >= 1");
}

PermittivitySpectrum::PermittivitySpectrum(std::vector<PermittivityPoint> points,
                                           double frequency_hz, std::string material)
    : points_(std::move(points)),
      frequency_hz_(frequency_hz),
      material_(std::move(material)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    require(std::isfinite(p.field_amplitude) && std::isfinite(p.eps_eff) && p.eps_eff > 0.0,
            ErrorCode::kInvalidArgument,
            "spectrum point " + std::to_string(i) + " must be finite with eps_eff > 0");
    if (i > 0) {
      require(p.field_amplitude > points_[i - 1].field_amplitude, ErrorCode::kInvalidArgument,
              "spectrum field amplitudes must be strictly increasing");
    }
  }
}

PermittivitySpectrum PermittivitySpectrum::flat(double eps_eff, double field_lo,
                                                double field_hi) {
  return PermittivitySpectrum({{field_lo, eps_eff}, {field_hi, eps_eff}}, 0.0, "flat");
}

DECurve extract_discharge_branch(const DECurve& curve) {
  curve.validate();
  const auto& s = curve.samples;
  require(s.size() >= 3, ErrorCode::kNoDischargeBranch,
          "a D-E loop needs at least 3 samples, got " + std::to_string(s.size()));

  const auto peak_it = std::max_element(s.begin(), s.end(), [](const DEPoint& a, const DEPoint& b) {
    return a.displacement < b.displacement;
  });
  const std::size_t peak = static_cast<std::size_t>(peak_it - s.begin());
  const double peak_field = s[peak].field;

  // Walk the descending branch. It ends when the field turns negative, or when
  // it climbs back up after having fallen below half of the peak field (start
  // of the next cycle).
  std::size_t end = peak;
  for (std::size_t j = peak; j < s.size(); ++j) {
    const double e = s[j].field;
    if (e < 0.0) break;
    const double e_min = s[end].field;
    if (e_min < 0.5 * peak_field && e - e_min > 0.5 * (peak_field - e_min)) break;
    if (e < e_min) end = j;
  }

  DECurve branch{{}, curve.frequency_hz, curve.material};
  for (std::size_t j = peak; j <= end; ++j) {
    if (!branch.samples.empty() && s[j].displacement > branch.samples.back().displacement) {
      continue;
    }
    branch.samples.push_back(s[j]);
  }
  require(branch.samples.size() >= 3, ErrorCode::kNoDischargeBranch,
          "only " + std::to_string(branch.samples.size()) +
              " samples remain on the discharge branch");
  return branch;
}

double energy_density(const DECurve& branch) {
  branch.validate();
  const auto& s = branch.samples;
  require(s.size() >= 2, ErrorCode::kInvalidArgument,
          "energy density needs at least 2 branch samples");

  bool non_increasing = true;
  bool non_decreasing = true;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double d = s[i].displacement - s[i - 1].displacement;
    if (d > 0.0) non_increasing = false;
    if (d < 0.0) non_decreasing = false;
  }
  require(non_increasing || non_decreasing, ErrorCode::kNonMonotoneBranch,
          "discharge branch displacement is not monotone");

  // Orient the integral from low D to high D.
  double u = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    u += 0.5 * (s[i].field + s[i - 1].field) * std::abs(s[i].displacement - s[i - 1].displacement);
  }
  return u;
}

PermittivityPoint effective_permittivity(const DECurve& branch) {
  const double u = energy_density(branch);
  double amplitude = -INFINITY;
  for (const auto& p : branch.samples) amplitude = std::max(amplitude, p.field);
  require(amplitude > 0.0, ErrorCode::kZeroField,
          "branch amplitude must be positive to define an effective permittivity");
  return {amplitude, 2.0 * u / (kVacuumPermittivity * amplitude * amplitude)};
}

PermittivitySpectrum build_spectrum(std::span<const DECurve> curves) {
  require(!curves.empty(), ErrorCode::kEmptySpectrum, "no D-E loops supplied");
  const auto& first = curves.front();
  std::vector<PermittivityPoint> points;
  points.reserve(curves.size());
  for (const auto& c : curves) {
    require(c.material == first.material && c.frequency_hz == first.frequency_hz,
            ErrorCode::kMixedMaterial,
            "loop for '" + c.material + "' does not match '" + first.material + "'");
    const PermittivityPoint p = effective_permittivity(extract_discharge_branch(c));
    require(p.eps_eff > 0.0, ErrorCode::kNonMonotoneBranch,
            "loop yields a non-positive effective permittivity");
    points.push_back(p);
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.field_amplitude < b.field_amplitude;
  });
  for (std::size_t i = 1; i < points.size(); ++i) {
    require(points[i].field_amplitude != points[i - 1].field_amplitude,
            ErrorCode::kDuplicateAmplitude,
            "two loops share field amplitude " + std::to_string(points[i].field_amplitude) +
                " V/m");
  }
  return PermittivitySpectrum(std::move(points), first.frequency_hz, first.material);
}

LookupResult spectrum_lookup(const PermittivitySpectrum& spectrum, double field) {
  const auto& p = spectrum.points();
  require(!p.empty(), ErrorCode::kEmptySpectrum, "permittivity spectrum has no points");
  require(!std::isnan(field), ErrorCode::kInvalidArgument, "lookup field is NaN");
  if (field <= p.front().field_amplitude) {
    return {p.front().eps_eff, field < p.front().field_amplitude};
  }
  if (field >= p.back().field_amplitude) {
    return {p.back().eps_eff, field > p.back().field_amplitude};
  }
  const auto hi = std::upper_bound(p.begin(), p.end(), field, [](double e, const PermittivityPoint& q) {
    return e < q.field_amplitude;
  });
  const auto lo = hi - 1;
  if (field == lo->field_amplitude) return {lo->eps_eff, false};
  const double s = (field - lo->field_amplitude) / (hi->field_amplitude - lo->field_amplitude);
  return {lo->eps_eff + s * (hi->eps_eff - lo->eps_eff), false};
}

}  // namespace halvekit
