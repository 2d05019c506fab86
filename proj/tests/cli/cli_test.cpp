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

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string output;  // stdout and stderr
};

Result run(const std::string& args) {
  const std::string cmd = std::string(HALVEKIT_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (const size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("halvekit_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name) << content;
    return path(name);
  }

  std::string loop(const std::string& name, double eps_r, double e_max) {
    std::ostringstream s;
    s.precision(17);
    s << "E_V_per_m,D_C_per_m2\n";
    for (int i = 0; i <= 400; ++i) {
      const double e = e_max * (i <= 200 ? i : 400 - i) / 200.0;
      s << e << "," << 8.8541878128e-12 * eps_r * e << "\n";
    }
    return write(name, s.str());
  }

  fs::path dir_;
};

TEST_F(CliTest, VersionAndUsage) {
  const auto v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.output.find("0.1.0"), std::string::npos);
  EXPECT_EQ(run("").code, 4);
  EXPECT_EQ(run("predict --bogus").code, 4);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, PermittivityFromSidecars) {
  const std::string side = R"({"material": "BoPET", "frequency_hz": 2})";
  write("a.json", side);
  write("b.json", side);
  const auto a = loop("a.csv", 3.3, 1e8), b = loop("b.csv", 3.3, 2e8);
  const auto r = run("permittivity " + a + " " + b + " --out " + path("out"));
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string csv = slurp(dir_ / "out" / "spectrum.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "E_V_per_m,eps_eff");
  EXPECT_NE(slurp(dir_ / "out" / "spectrum.json").find("BoPET"), std::string::npos);
  EXPECT_EQ(run("verify " + path("out")).code, 0);
}

TEST_F(CliTest, PermittivityIngestErrorExitCode) {
  const auto bad = write("bad.csv", "E,D_C_per_m2\n0,0\n");
  const auto r = run("permittivity " + bad + " --frequency-hz 2 --material x --out " + path("out"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("missing column 'E_V_per_m'"), std::string::npos) << r.output;
  EXPECT_TRUE(fs::exists(dir_ / "out" / "manifest.json"));
}

TEST_F(CliTest, PredictWithFixtures) {
  const std::string data = HALVEKIT_TEST_DATA;
  const auto r = run("predict --geometry " + data + "/halve_60x17.json --spectrum " + data +
                     "/terpolymer_spectrum.csv --voltage 800,1100 --voltage 2000 --points 64 "
                     "--alpha-min 0.001 --out " + path("out"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("warning:"), std::string::npos);
  for (auto f : {"curve_800V.csv", "curve_1100V.csv", "curve_2000V.json", "energy_density.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const std::string e = slurp(dir_ / "out" / "energy_density.csv");
  EXPECT_EQ(e.substr(0, e.find('\n')), "E_V_per_um,u_J_per_kg");
  EXPECT_NE(slurp(dir_ / "out" / "manifest.json").find("outside the spectrum"), std::string::npos);
}

TEST_F(CliTest, PredictWithoutMassIsPrecondition) {
  const std::string data = HALVEKIT_TEST_DATA;
  const auto g = write("g.json", R"({"w_m": 0.06, "Lp_m": 0.017, "Le_m": 0.009, "t_m": 5e-6})");
  const auto r = run("predict --geometry " + g + " --spectrum " + data +
                     "/terpolymer_spectrum.csv --voltage 1000 --out " + path("out"));
  EXPECT_EQ(r.code, 4) << r.output;
  EXPECT_NE(r.output.find("mass"), std::string::npos);
}

TEST_F(CliTest, KineticsNoMotionAndWindowFlags) {
  std::ostringstream s;
  s << "time_s,contraction_m\n";
  for (int i = 0; i < 500; ++i) s << i * 1e-3 << ",0\n";
  const auto t = write("t.csv", s.str());
  write("t.json", R"({"load_kg": 0.3, "actuator_mass_kg": 0.01, "actuator_length_m": 0.017,
                      "voltage_V": 1100})");
  const auto r = run("kinetics " + t + " --window 17 --order 3 --out " + path("out"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(slurp(dir_ / "out" / "manifest.json").find("NoMotionDetected"), std::string::npos);
  EXPECT_EQ(run("kinetics " + t + " --window 16 --out " + path("o2")).code, 4);
}

TEST_F(CliTest, FitIsReproducibleAcrossThreadSettings) {
  // Curve from a 60 x 17 mm pouch at 1000 V with eps_r = 20.
  std::ostringstream m;
  m.precision(17);
  m << "strain,force_N\n";
  const double w = 0.06, t = 5e-6, eps = 20, v = 1000;
  const double lp = 0.017, le = 0.009, vol = 0.95 * (lp - le) * (lp - le) / M_PI;
  for (int i = 0; i < 30; ++i) {
    const double a = 0.25 + 1.2 * i / 29.0;
    double l = std::sqrt(4 * a * a * vol / (2 * a - std::sin(2 * a)));
    l = std::max(l, lp - le);
    const double z = std::min(lp - l, le);
    const double strain = (lp - z - l * std::sin(a) / a) / lp;
    const double f = w * t * std::cos(a) / (1 - std::cos(a)) * 8.8541878128e-12 * eps *
                     (v / t) * (v / t);
    m << strain << "," << f << "\n";
  }
  // Rows were generated in increasing angle, hence increasing strain.
  const auto meas = write("m.csv", m.str());
  write("m.json", R"({"voltage_V": 1000})");
  const auto box = write("box.json", R"([
    {"name": "w", "min": 0.05, "max": 0.07, "initial": 0.065},
    {"name": "t", "min": 4e-6, "max": 6e-6, "initial": 5.5e-6},
    {"name": "eps0", "min": 8.845e-12, "max": 8.863e-12, "initial": 8.8541878128e-12},
    {"name": "eps_r", "min": 15, "max": 25, "initial": 17},
    {"name": "V", "min": 800, "max": 1200, "initial": 1100},
    {"name": "alpha0", "min": 0.001, "max": 0.1, "initial": 0.05},
    {"name": "Le", "min": 0.008, "max": 0.01, "initial": 0.0095},
    {"name": "Lp", "min": 0.016, "max": 0.018, "initial": 0.0165}])");
  const std::string base = "fit " + meas + " --box " + box + " --seed 7 --restarts 4 ";
  const auto a = run(base + "--threads 1 --out " + path("a"));
  ASSERT_EQ(a.code, 0) << a.output;
  ASSERT_EQ(std::system(("HALVEKIT_THREADS=3 " + std::string(HALVEKIT_CLI) + " " + base +
                         "--out " + path("b") + " >/dev/null 2>&1")
                            .c_str()),
            0);
  EXPECT_EQ(slurp(dir_ / "a" / "fit_result.json"), slurp(dir_ / "b" / "fit_result.json"));
  EXPECT_EQ(slurp(dir_ / "a" / "fitted_curve.csv"), slurp(dir_ / "b" / "fitted_curve.csv"));
  EXPECT_NE(slurp(dir_ / "a" / "fit_result.json").find("\"seed\": 7"), std::string::npos);

  EXPECT_EQ(run("verify " + path("a")).code, 0);
  std::ofstream(dir_ / "a" / "fitted_curve.csv", std::ios::app) << "1,1\n";
  const auto bad = run("verify " + path("a"));
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.output.find("fitted_curve.csv"), std::string::npos);
}

}  // namespace
