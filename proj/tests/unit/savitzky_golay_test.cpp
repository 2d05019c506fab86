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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "halvekit/error.hpp"
#include "halvekit/savitzky_golay.hpp"

namespace halvekit {
namespace {

// Least-squares polynomial through (x, y) by Gaussian elimination on the
// normal equations; returns coefficients c0..c_order.
std::vector<long double> polyfit(const std::vector<long double>& x,
                                 const std::vector<long double>& y, int order) {
  const int m = order + 1;
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m + 1, 0.0L));
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a[i][j] += std::pow(x[k], i + j);
      a[i][m] += std::pow(x[k], i) * y[k];
    }
  }
  for (int c = 0; c < m; ++c) {
    int p = c;
    for (int r = c + 1; r < m; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    std::swap(a[c], a[p]);
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<long double> coef(m);
  for (int i = 0; i < m; ++i) coef[i] = a[i][m] / a[i][i];
  return coef;
}

// Value and derivatives of the local fit for sample i, with windows pinned
// at the edges.
std::array<double, 3> oracle(const std::vector<double>& y, std::size_t i, int window,
                             int order, double h) {
  const std::size_t half = window / 2;
  std::size_t start = i < half ? 0 : i - half;
  start = std::min(start, y.size() - window);
  std::vector<long double> xs, ys;
  for (int j = 0; j < window; ++j) {
    xs.push_back(static_cast<long double>(start + j) - static_cast<long double>(i));
    ys.push_back(y[start + j]);
  }
  const auto c = polyfit(xs, ys, order);
  return {static_cast<double>(c[0]), static_cast<double>(c[1] / h),
          static_cast<double>(2 * c[2] / (h * h))};
}

TEST(SavitzkyGolay, ReproducesCubicsAndDerivatives) {
  const SavitzkyGolayFilter f(17, 3);
  const double h = 1e-3;
  std::vector<double> y;
  auto p = [](double t) { return 1.0 + 2.0 * t - 3.0 * t * t + 0.5 * t * t * t; };
  auto dp = [](double t) { return 2.0 - 6.0 * t + 1.5 * t * t; };
  auto ddp = [](double t) { return -6.0 + 3.0 * t; };
  for (int i = 0; i < 400; ++i) y.push_back(p(i * h));
  const auto s = f.apply(y, 0, h);
  const auto v = f.apply(y, 1, h);
  const auto a = f.apply(y, 2, h);
  for (int i = 0; i < 400; ++i) {
    EXPECT_NEAR(s[i], p(i * h), 1e-10);
    EXPECT_NEAR(v[i], dp(i * h), 1e-8);
    EXPECT_NEAR(a[i], ddp(i * h), 1e-4);
  }
}

TEST(SavitzkyGolay, ConstantHasZeroDerivative) {
  const SavitzkyGolayFilter f(17, 3);
  const std::vector<double> y(50, 0.25);
  for (double v : f.apply(y, 1, 1e-3)) EXPECT_NEAR(v, 0.0, 1e-10);
  for (double v : f.apply(y, 2, 1e-3)) EXPECT_NEAR(v, 0.0, 1e-6);
  for (double v : f.apply(y, 0, 1e-3)) EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(SavitzkyGolay, NoisySineMatchesLocalLeastSquares) {
  const int window = 17, order = 3;
  const double h = 1e-3, freq = 3.0, amp = 0.01;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 1e-5);
  std::vector<double> y;
  for (int i = 0; i < 600; ++i) y.push_back(amp * std::sin(2 * M_PI * freq * i * h) + noise(rng));

  const SavitzkyGolayFilter f(window, order);
  const auto s = f.apply(y, 0, h);
  const auto v = f.apply(y, 1, h);
  const auto a = f.apply(y, 2, h);
  double sq = 0, oracle_sq = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto o = oracle(y, i, window, order, h);
    EXPECT_NEAR(s[i], o[0], 1e-12);
    EXPECT_NEAR(v[i], o[1], 1e-9);
    EXPECT_NEAR(a[i], o[2], 1e-5);
    const double truth = amp * 2 * M_PI * freq * std::cos(2 * M_PI * freq * i * h);
    sq += (v[i] - truth) * (v[i] - truth);
    oracle_sq += (o[1] - truth) * (o[1] - truth);
  }
  EXPECT_NEAR(std::sqrt(sq / y.size()), std::sqrt(oracle_sq / y.size()), 1e-9);
}

TEST(SavitzkyGolay, RejectsBadConfiguration) {
  EXPECT_THROW(SavitzkyGolayFilter(16, 3), Error);
  EXPECT_THROW(SavitzkyGolayFilter(5, 5), Error);
  const SavitzkyGolayFilter f(17, 3);
  const std::vector<double> y(10, 1.0);
  try {
    f.apply(y, 0, 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTraceTooShort);
  }
}

}  // namespace
}  // namespace halvekit
