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

#ifndef HALVEKIT_SAVITZKY_GOLAY_HPP_
#define HALVEKIT_SAVITZKY_GOLAY_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace halvekit {

// Least-squares polynomial smoothing on uniformly spaced samples.
//
// Every output sample is the value (or derivative) at that sample of a
// polynomial of degree `order` fitted to `window` neighbouring samples. Away
// from the ends the window is centred; within half a window of either end the
// window is pinned to the data and the fit is evaluated off-centre, so a
// polynomial of degree <= order is reproduced exactly everywhere.
class SavitzkyGolayFilter {
 public:
  SavitzkyGolayFilter(int window, int order);

  int window() const noexcept { return window_; }
  int order() const noexcept { return order_; }

  // derivative = 0, 1 or 2; spacing is the uniform sample period.
  std::vector<double> apply(std::span<const double> y, int derivative, double spacing) const;

 private:
  int window_;
  int order_;
  int half_;
  // weights_[d](p, j): weight of window sample j for the d-th derivative
  // evaluated at window position p, in units of samples.
  std::vector<Eigen::MatrixXd> weights_;
};

}  // namespace halvekit

#endif  // HALVEKIT_SAVITZKY_GOLAY_HPP_
