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

#include "g2pm/pinyin.h"

#include <string>

#include "g2pm/error.h"

namespace g2pm {

PinyinSyllable ParsePinyin(std::string_view text) {
  auto fail = [&](const char* why) {
    return Error(ErrorCode::kMalformedPinyin,
                 "'" + std::string(text) + "': " + why);
  };
  if (text.size() < 2) throw fail("too short");
  const char last = text.back();
  if (last < '1' || last > '5') throw fail("missing tone digit 1-5");

  std::string base(text.substr(0, text.size() - 1));
  if (base[0] >= 'A' && base[0] <= 'Z') base[0] = static_cast<char>(base[0] - 'A' + 'a');
  for (std::size_t i = 0; i < base.size(); ++i) {
    const char c = base[i];
    if (c == ':') {
      if (i == 0 || base[i - 1] != 'u') throw fail("':' must follow 'u'");
    } else if (c < 'a' || c > 'z') {
      throw fail("illegal character");
    }
  }
  return PinyinSyllable{std::move(base), last - '0'};
}

namespace {

// Tone-marked vowels indexed by tone 1..4.
const char* MarkedVowel(char vowel, bool umlaut, int tone) {
  static const char* kA[] = {"ā", "á", "ǎ", "à"};
  static const char* kE[] = {"ē", "é", "ě", "è"};
  static const char* kI[] = {"ī", "í", "ǐ", "ì"};
  static const char* kO[] = {"ō", "ó", "ǒ", "ò"};
  static const char* kU[] = {"ū", "ú", "ǔ", "ù"};
  static const char* kV[] = {"ǖ", "ǘ", "ǚ", "ǜ"};
  switch (vowel) {
    case 'a': return kA[tone - 1];
    case 'e': return kE[tone - 1];
    case 'i': return kI[tone - 1];
    case 'o': return kO[tone - 1];
    case 'u': return umlaut ? kV[tone - 1] : kU[tone - 1];
  }
  return nullptr;
}

}  // namespace

std::string ToToneMarks(const PinyinSyllable& syllable) {
  // Collapse "u:" to a single marker position so indices line up with letters.
  std::string letters;
  std::string umlaut;  // '1' where the letter is ü
  for (std::size_t i = 0; i < syllable.base.size(); ++i) {
    if (syllable.base[i] == ':') continue;
    letters.push_back(syllable.base[i]);
    const bool is_v = syllable.base[i] == 'u' && i + 1 < syllable.base.size() &&
                      syllable.base[i + 1] == ':';
    umlaut.push_back(is_v ? '1' : '0');
  }

  // Placement: a or e if present; "ou" marks the o; otherwise the last vowel.
  std::size_t target = std::string::npos;
  if (auto pos = letters.find_first_of("ae"); pos != std::string::npos) {
    target = pos;
  } else if (auto ou = letters.find("ou"); ou != std::string::npos) {
    target = ou;
  } else if (auto v = letters.find_last_of("iou"); v != std::string::npos) {
    target = v;
  }

  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const bool is_v = umlaut[i] == '1';
    if (i == target && syllable.tone >= 1 && syllable.tone <= 4) {
      out += MarkedVowel(letters[i], is_v, syllable.tone);
    } else if (is_v) {
      out += "ü";
    } else {
      out.push_back(letters[i]);
    }
  }
  return out;
}

}  // namespace g2pm
