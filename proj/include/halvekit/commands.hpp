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

#ifndef HALVEKIT_COMMANDS_HPP_
#define HALVEKIT_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "halvekit/actuator_model.hpp"
#include "halvekit/kinetics.hpp"

// Batch pipelines behind the command-line tool. Each run writes its outputs
// plus a single manifest.json into the output directory, also on failure, and
// reports the process exit code (0 success, 2 ingest, 3 numerical failure,
// 4 precondition violation).
namespace halvekit::commands {

namespace fs = std::filesystem;

struct Outcome {
  int exit_code = 0;
  std::string message;
  std::vector<std::string> warnings;
};

struct PermittivityRequest {
  std::vector<fs::path> de_files;
  std::optional<double> frequency_hz;
  std::optional<std::string> material;
  fs::path out_dir;
};

// Writes spectrum.csv and spectrum.json.
Outcome run_permittivity(const PermittivityRequest& request);

struct PredictRequest {
  fs::path geometry;
  fs::path spectrum;
  std::vector<double> voltages;
  int n_points = 200;
  double alpha_min = kMinSweepAngle;
  fs::path out_dir;
};

// One curve_<V>V.csv (+ sidecar) per voltage and energy_density.csv.
Outcome run_predict(const PredictRequest& request);

struct KineticsRequest {
  fs::path trace;
  std::optional<fs::path> sidecar;
  KineticsOptions options;
  fs::path out_dir;
};

// report.json plus contraction.csv, velocity.csv, acceleration.csv and
// specific_power.csv.
Outcome run_kinetics(const KineticsRequest& request);

struct FitRequest {
  fs::path measurements;
  fs::path box;
  std::uint64_t seed = 0;
  int restarts = 16;
  int threads = 0;
  double fill_fraction = 0.95;
  std::optional<fs::path> geometry;  // defaults to the measurement sidecar's
  fs::path out_dir;
};

// fit_result.json, fitted_curve.csv and overlay.csv.
Outcome run_fit(const FitRequest& request);

// Re-hashes the inputs and outputs recorded in a manifest. Returns the
// mismatching paths; empty means everything verifies.
std::vector<std::string> verify_manifest(const fs::path& out_dir);

}  // namespace halvekit::commands

#endif  // HALVEKIT_COMMANDS_HPP_
