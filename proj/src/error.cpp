// Copyright 2026 The vendi Authors.
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

#include "vendi/error.hpp"

namespace vendi {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroNormVector: return "ZeroNormVector";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::InfiniteDimensionalKernel: return "InfiniteDimensionalKernel";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::NotAProbability: return "NotAProbability";
    case ErrorKind::ShiftInvariantRequired: return "ShiftInvariantRequired";
    case ErrorKind::DegenerateLandmarks: return "DegenerateLandmarks";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedPayload: return "TruncatedPayload";
    case ErrorKind::PayloadLengthMismatch: return "PayloadLengthMismatch";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::GridExceedsData: return "GridExceedsData";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPSD:
    case ErrorKind::EigensolverFailure:
    case ErrorKind::NotAProbability:
    case ErrorKind::DegenerateLandmarks:
    case ErrorKind::IoFailure:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace vendi
