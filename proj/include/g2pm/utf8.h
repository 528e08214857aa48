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

#include <string>
#include <string_view>

namespace g2pm {

// Target-polyphone delimiter used by CPP sentence files (LOWER ONE EIGHTH BLOCK).
inline constexpr char32_t kMarkChar = U'▁';

// Decodes UTF-8; each invalid or truncated sequence becomes one U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(char32_t ch);
std::string EncodeUtf8(std::u32string_view text);

// CJK unified ideographs (base block, extensions A-F) and compatibility ideographs.
bool IsHan(char32_t ch);

// Strips one trailing '\r' so CRLF files read like LF files.
inline std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace g2pm
