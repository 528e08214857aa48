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

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace g2pm {

// One pronunciation in tone-number notation: "jiao3", "nu:e4", "r5".
// The base is lowercase ASCII with ':' allowed only right after 'u' (for ü);
// tone 5 is the neutral tone.
struct PinyinSyllable {
  std::string base;
  int tone = 5;

  // Canonical form: base followed by the tone digit.
  std::string Render() const { return base + static_cast<char>('0' + tone); }

  auto operator<=>(const PinyinSyllable& other) const {
    return Render() <=> other.Render();
  }
  bool operator==(const PinyinSyllable& other) const = default;
};

// Parses canonical tone-number pinyin. A single leading capital (dictionary
// proper nouns) is lowercased first. Throws Error(kMalformedPinyin).
PinyinSyllable ParsePinyin(std::string_view text);

// Display helper: "lu:e4" -> "lüè", "de5" -> "de".
std::string ToToneMarks(const PinyinSyllable& syllable);

}  // namespace g2pm

template <>
struct std::hash<g2pm::PinyinSyllable> {
  std::size_t operator()(const g2pm::PinyinSyllable& p) const noexcept {
    return std::hash<std::string>{}(p.base) * 31 + static_cast<std::size_t>(p.tone);
  }
};
