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

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "g2pm/pinyin.h"

namespace g2pm {

struct LexiconDiagnostics {
  std::size_t lines = 0;
  std::size_t comments = 0;
  std::size_t entries_used = 0;
  std::size_t malformed_lines = 0;
  std::size_t count_mismatch = 0;
  std::size_t bad_pinyin_tokens = 0;

  std::string Summary() const;
};

// Character -> ordered, duplicate-free candidate pronunciations. Immutable
// once built; share freely between threads.
class Lexicon {
 public:
  Lexicon() = default;

  // CC-CEDICT line grammar: `TRAD SIMP [pin1 yin1] /gloss/`. Lines starting
  // with '#' are comments. Malformed and misaligned entries are skipped and
  // counted in `diagnostics`.
  static Lexicon Parse(std::istream& in, LexiconDiagnostics* diagnostics = nullptr);
  static Lexicon Load(const std::filesystem::path& path,
                      LexiconDiagnostics* diagnostics = nullptr);

  bool Contains(char32_t ch) const { return entries_.count(ch) != 0; }
  bool IsPolyphone(char32_t ch) const;

  // Throws Error(kUnknownCharacter) for characters not in the lexicon.
  const std::vector<PinyinSyllable>& Candidates(char32_t ch) const;

  // nullptr when absent.
  const std::vector<PinyinSyllable>* Find(char32_t ch) const;

  std::size_t size() const { return entries_.size(); }

  // Characters sorted by code point.
  std::vector<char32_t> Characters() const;

  // Characters that only ever appear in traditional headwords.
  const std::unordered_set<char32_t>& traditional_only() const { return traditional_only_; }

 private:
  friend class LexiconBuilder;

  std::unordered_map<char32_t, std::vector<PinyinSyllable>> entries_;
  std::unordered_set<char32_t> traditional_only_;
};

class LexiconBuilder {
 public:
  // Appends `pinyin` to the candidates of `ch` unless already present.
  void Add(char32_t ch, PinyinSyllable pinyin);
  void AddTraditionalOnly(char32_t ch) { traditional_.insert(ch); }

  Lexicon Build() &&;

 private:
  Lexicon lexicon_;
  std::unordered_set<char32_t> traditional_;
};

}  // namespace g2pm
