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

// halvekit command-line front end. Links only against the C API.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halvekit/halvekit.h"

namespace {

int report(int code) {
  for (size_t i = 0; i < hk_last_warning_count(); ++i) {
    std::cerr << "warning: " << hk_last_warning(i) << '\n';
  }
  if (code != 0) std::cerr << "error: " << hk_last_error() << '\n';
  return code;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zipping electrohydraulic actuator toolkit"};
  app.set_version_flag("--version", std::string(hk_version()));
  app.require_subcommand(1);

  // permittivity
  std::vector<std::string> de_files;
  double frequency_hz = std::numeric_limits<double>::quiet_NaN();
  std::string material;
  std::string perm_out;
  auto* perm = app.add_subcommand("permittivity", "Effective permittivity spectrum from D-E loops");
  perm->add_option("de_files", de_files, "D-E loop CSV files")->required()->check(CLI::ExistingFile);
  perm->add_option("--frequency-hz", frequency_hz, "Drive frequency (default: sidecar)");
  perm->add_option("--material", material, "Material name (default: sidecar)");
  perm->add_option("--out", perm_out, "Output directory")->required();

  // predict
  std::string geometry, spectrum, pred_out;
  std::vector<double> voltages;
  int n_points = 200;
  double alpha_min = 1e-3;
  auto* pred = app.add_subcommand("predict", "Force-strain curves and energy densities");
  pred->add_option("--geometry", geometry, "Geometry JSON")->required()->check(CLI::ExistingFile);
  pred->add_option("--spectrum", spectrum, "Spectrum CSV")->required()->check(CLI::ExistingFile);
  pred->add_option("--voltage", voltages, "Drive voltage(s), V")->required()->delimiter(',');
  pred->add_option("--points", n_points, "Samples per curve")->check(CLI::Range(2, 1000000));
  pred->add_option("--alpha-min", alpha_min, "Smallest opening angle, rad");
  pred->add_option("--out", pred_out, "Output directory")->required();

  // kinetics
  std::string trace, sidecar, kin_out;
  hk_kinetics_options kopts;
  hk_kinetics_options_init(&kopts);
  auto* kin = app.add_subcommand("kinetics", "Strain-rate and specific-power analysis");
  kin->add_option("trace", trace, "Displacement trace CSV")->required()->check(CLI::ExistingFile);
  kin->add_option("--sidecar", sidecar, "Trace metadata JSON (default: <trace>.json)");
  kin->add_option("--window", kopts.window, "Savitzky-Golay window")->check(CLI::Range(3, 100001));
  kin->add_option("--order", kopts.order, "Savitzky-Golay polynomial order")->check(CLI::Range(2, 20));
  kin->add_option("--out", kin_out, "Output directory")->required();

  // fit
  std::string measurements, box, fit_geometry, fit_out;
  uint64_t seed = 0;
  int restarts = 16;
  int threads = 0;
  double fill_fraction = 0.95;
  auto* fit = app.add_subcommand("fit", "Fit the force-strain model to measurements");
  fit->add_option("measurements", measurements, "Measured strain,force_N CSV")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--box", box, "Parameter box JSON")->required()->check(CLI::ExistingFile);
  fit->add_option("--seed", seed, "Optimizer seed");
  fit->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::Range(1, 100000));
  fit->add_option("--threads", threads, "Worker threads (0: HALVEKIT_THREADS or all cores)");
  fit->add_option("--fill-fraction", fill_fraction, "Pouch fill fraction");
  fit->add_option("--geometry", fit_geometry, "Geometry JSON (default: measurement sidecar)");
  fit->add_option("--out", fit_out, "Output directory")->required();

  // verify
  std::string verify_dir;
  auto* verify = app.add_subcommand("verify", "Check output hashes against a run manifest");
  verify->add_option("dir", verify_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  if (*perm) {
    const auto files = c_strings(de_files);
    hk_permittivity_request r{files.data(), files.size(), frequency_hz,
                              material.empty() ? nullptr : material.c_str(), perm_out.c_str()};
    return report(hk_run_permittivity(&r));
  }
  if (*pred) {
    hk_predict_request r{geometry.c_str(), spectrum.c_str(), voltages.data(), voltages.size(),
                         n_points,         alpha_min,        pred_out.c_str()};
    return report(hk_run_predict(&r));
  }
  if (*kin) {
    hk_kinetics_request r{trace.c_str(), sidecar.empty() ? nullptr : sidecar.c_str(), kopts,
                          kin_out.c_str()};
    return report(hk_run_kinetics(&r));
  }
  if (*fit) {
    hk_fit_request r{measurements.c_str(), box.c_str(), seed, restarts, threads, fill_fraction,
                     fit_geometry.empty() ? nullptr : fit_geometry.c_str(), fit_out.c_str()};
    return report(hk_run_fit(&r));
  }
  if (*verify) {
    const int mismatches = hk_verify_manifest(verify_dir.c_str());
    if (mismatches < 0) return report(2);
    for (size_t i = 0; i < hk_last_warning_count(); ++i) {
      std::cerr << "mismatch: " << hk_last_warning(i) << '\n';
    }
    if (mismatches == 0) std::cout << "ok\n";
    return mismatches == 0 ? 0 : 4;
  }
  return 4;
}
