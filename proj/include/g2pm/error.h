// Copyright 2026 The g2pm Authors
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

namespace g2pm {

enum class ErrorCode {
  kMalformedPinyin,
  kUnknownCharacter,
  kBadMarking,
  kLineCountMismatch,
  kDimensionMismatch,
  kIndexOutOfRange,
  kStaleCache,
  kNumericalFault,
  kEmptyDataset,
  kEmptyMask,
  kBadMagic,
  kUnsupportedVersion,
  kChecksumMismatch,
  kTruncatedFile,
  kModelNotLoaded,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace g2pm
