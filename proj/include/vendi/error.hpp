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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vendi {

enum class ErrorKind {
  InvalidParams,
  DimensionMismatch,
  ZeroNormVector,
  NonFiniteValue,
  NotPSD,
  EigensolverFailure,
  InfiniteDimensionalKernel,
  InvalidAlpha,
  NotAProbability,
  ShiftInvariantRequired,
  DegenerateLandmarks,
  PreconditionViolated,
  BadMagic,
  TruncatedPayload,
  PayloadLengthMismatch,
  RaggedRows,
  ParseError,
  IoFailure,
  GridExceedsData,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by bad user input (flags, files, preconditions)
/// as opposed to failures of a computation on valid input.
bool is_input_error(ErrorKind kind) noexcept;

/// The single exception type thrown by the library. `kind()` carries the
/// machine-readable category, `what()` the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vendi
