// Copyright 2026 The medlat Authors.
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

namespace medlat {

enum class ErrorKind {
  CycleDetected,
  UnknownLabel,
  DuplicateLabel,
  NotAnIdeal,
  OutOfBounds,
  TooLarge,
  ShapeMismatch,
  EmptyInput,
  NotALattice,
  NotDistributive,
  NotRegular,
  MalformedFile,
  NotAPermutation,
  SizeMismatch,
  RankOutOfRange,
  IndexOutOfRange,
  NotStableInput,
  NotClearingInput,
  JOutOfRange,
  InvalidValuation,
  PostconditionViolated,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotStableInput: return "NotStableInput";
    case ErrorKind::NotClearingInput: return "NotClearingInput";
    case ErrorKind::JOutOfRange: return "JOutOfRange";
    case ErrorKind::InvalidValuation: return "InvalidValuation";
    case ErrorKind::PostconditionViolated: return "PostconditionViolated";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type; the
/// kind names match the error names printed by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace medlat
