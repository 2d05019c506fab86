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

#include "halvekit/error.hpp"

namespace halvekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIngest: return "IngestError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNoDischargeBranch: return "NoDischargeBranch";
    case ErrorCode::kNonMonotoneBranch: return "NonMonotoneBranch";
    case ErrorCode::kZeroField: return "ZeroField";
    case ErrorCode::kMixedMaterial: return "MixedMaterial";
    case ErrorCode::kDuplicateAmplitude: return "DuplicateAmplitude";
    case ErrorCode::kEmptySpectrum: return "EmptySpectrum";
    case ErrorCode::kOverfilled: return "Overfilled";
    case ErrorCode::kDegenerateAngle: return "DegenerateAngle";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kZeroPower: return "ZeroPower";
    case ErrorCode::kTraceTooShort: return "TraceTooShort";
    case ErrorCode::kNoMotionDetected: return "NoMotionDetected";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kNonConvergence: return "NonConvergence";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIngest:
    case ErrorCode::kIo:
      return 2;
    case ErrorCode::kNoDischargeBranch:
    case ErrorCode::kNonMonotoneBranch:
    case ErrorCode::kZeroField:
    case ErrorCode::kOverfilled:
    case ErrorCode::kDegenerateAngle:
    case ErrorCode::kZeroPower:
    case ErrorCode::kNoMotionDetected:
    case ErrorCode::kNonConvergence:
      return 3;
    default:
      return 4;
  }
}

}  // namespace halvekit
