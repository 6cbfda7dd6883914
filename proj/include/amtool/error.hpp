// Copyright 2026 The amtool Authors
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

#ifndef AMTOOL_ERROR_HPP_
#define AMTOOL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace amtool {

enum class ErrorCode {
  kSyntax,
  kDuplicateSource,
  kMalformedType,
  kInvalidGraph,
  kMissingSource,
  kTypeMismatch,
  kNonEmptyRequest,
  kUnmatchedModifierSource,
  kLabelConflict,
  kIllTyped,
  kMalformedTree,
  kUnmatchedLabel,
  kMalformedRow,
  kUnalignableNode,
  kChildlessComplexNode,
  kAmbiguousCoordination,
  kUnknownSentence,
  kEmptyCorpus,
  kTooLarge,
  kIdMismatch,
  kTimeout,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` distinguishes
// them for callers that need to react (e.g. the decomposer mapping algebra
// errors to non-decomposability reasons).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace amtool

#endif  // AMTOOL_ERROR_HPP_
