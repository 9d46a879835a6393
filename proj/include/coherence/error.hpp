// Copyright 2026 The coherence-lab Authors
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

namespace coherence {

enum class ErrorKind {
  NonSquare,
  NonHermitian,
  NotPSD,
  NonFinite,
  DimMismatch,
  NotNormalized,
  InvalidState,
  BadDim,
  BadRank,
  BadParams,
  IncompleteChannel,
  NotIncoherent,
  InvalidPermutation,
  InvalidObservable,
  OptimizerFailed,
  UnknownMeasure,
  BadFormat,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::BadDim: return "BadDim";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::IncompleteChannel: return "IncompleteChannel";
    case ErrorKind::NotIncoherent: return "NotIncoherent";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::InvalidObservable: return "InvalidObservable";
    case ErrorKind::OptimizerFailed: return "OptimizerFailed";
    case ErrorKind::UnknownMeasure: return "UnknownMeasure";
    case ErrorKind::BadFormat: return "BadFormat";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coherence
