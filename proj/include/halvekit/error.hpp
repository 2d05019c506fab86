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

#ifndef HALVEKIT_ERROR_HPP_
#define HALVEKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace halvekit {

// Failure categories shared by every module. The numeric values are part of
// the C API (see halvekit.h) and must stay stable.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kIngest = 2,
  kIo = 3,
  // dielectric
  kNoDischargeBranch = 10,
  kNonMonotoneBranch = 11,
  kZeroField = 12,
  kMixedMaterial = 13,
  kDuplicateAmplitude = 14,
  kEmptySpectrum = 15,
  // actuator_model
  kOverfilled = 20,
  kDegenerateAngle = 21,
  kZeroMass = 22,
  kZeroPower = 23,
  // kinetics
  kTraceTooShort = 30,
  kNoMotionDetected = 31,
  kEmptyInput = 32,
  // sysid
  kInsufficientData = 40,
  kOutOfDomain = 41,
  kDomainMismatch = 42,
  kNonConvergence = 43,
};

std::string_view to_string(ErrorCode code);

// Process exit code for a failure category: 2 ingest, 3 numerical failure,
// 4 precondition violation.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace halvekit

#endif  // HALVEKIT_ERROR_HPP_
