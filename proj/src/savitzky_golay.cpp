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

#include "halvekit/savitzky_golay.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "halvekit/error.hpp"

namespace halvekit {

SavitzkyGolayFilter::SavitzkyGolayFilter(int window, int order)
    : window_(window), order_(order), half_(window / 2) {
  require(window >= 3 && window % 2 == 1, ErrorCode::kInvalidArgument,
          "Savitzky-Golay window must be odd and >= 3");
  require(order >= 0 && order < window, ErrorCode::kInvalidArgument,
          "Savitzky-Golay order must be below the window length");

  // Fit in the scaled coordinate u = (j - half) / half to keep the Vandermonde
  // matrix well conditioned.
  const double scale = static_cast<double>(half_);
  Eigen::MatrixXd vander(window, order + 1);
  for (int j = 0; j < window; ++j) {
    const double u = (j - half_) / scale;
    double power = 1.0;
    for (int k = 0; k <= order; ++k) {
      vander(j, k) = power;
      power *= u;
    }
  }
  // Rows of the pseudo-inverse map window samples to polynomial coefficients.
  const Eigen::MatrixXd coeffs =
      vander.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(window, window));

  weights_.assign(3, Eigen::MatrixXd::Zero(window, window));
  for (int p = 0; p < window; ++p) {
    const double u = (p - half_) / scale;
    for (int d = 0; d <= 2; ++d) {
      // d-th derivative of sum_k c_k u^k at u, converted to per-sample units.
      Eigen::RowVectorXd basis = Eigen::RowVectorXd::Zero(order + 1);
      for (int k = d; k <= order; ++k) {
        double falling = 1.0;
        for (int m = 0; m < d; ++m) falling *= k - m;
        basis(k) = falling * std::pow(u, k - d) / std::pow(scale, d);
      }
      weights_[static_cast<std::size_t>(d)].row(p) = basis * coeffs;
    }
  }
}

std::vector<double> SavitzkyGolayFilter::apply(std::span<const double> y, int derivative,
                                               double spacing) const {
  require(derivative >= 0 && derivative <= 2, ErrorCode::kInvalidArgument,
          "only derivatives 0, 1 and 2 are available");
  require(spacing > 0.0, ErrorCode::kInvalidArgument, "sample spacing must be positive");
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  require(n >= window_, ErrorCode::kTraceTooShort,
          "trace has " + std::to_string(n) + " samples, filter window is " +
              std::to_string(window_));

  const Eigen::MatrixXd& w = weights_[static_cast<std::size_t>(derivative)];
  const double unit = std::pow(spacing, derivative);
  std::vector<double> out(y.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(i - half_, 0, n - window_);
    const auto p = static_cast<Eigen::Index>(i - start);
    double acc = 0.0;
    for (int j = 0; j < window_; ++j) acc += w(p, j) * y[static_cast<std::size_t>(start + j)];
    out[static_cast<std::size_t>(i)] = acc / unit;
  }
  return out;
}

}  // namespace halvekit
