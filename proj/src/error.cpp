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

#include "amtool/error.hpp"

namespace amtool {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "Syntax";
    case ErrorCode::kDuplicateSource: return "DuplicateSource";
    case ErrorCode::kMalformedType: return "MalformedType";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kMissingSource: return "MissingSource";
    case ErrorCode::kTypeMismatch: return "TypeMismatch";
    case ErrorCode::kNonEmptyRequest: return "NonEmptyRequest";
    case ErrorCode::kUnmatchedModifierSource: return "UnmatchedModifierSource";
    case ErrorCode::kLabelConflict: return "LabelConflict";
    case ErrorCode::kIllTyped: return "IllTyped";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kUnmatchedLabel: return "UnmatchedLabel";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kUnalignableNode: return "UnalignableNode";
    case ErrorCode::kChildlessComplexNode: return "ChildlessComplexNode";
    case ErrorCode::kAmbiguousCoordination: return "AmbiguousCoordination";
    case ErrorCode::kUnknownSentence: return "UnknownSentence";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kIdMismatch: return "IdMismatch";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace amtool
