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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "g2pm/lexicon.h"
#include "g2pm/pinyin.h"

namespace g2pm {

// One CPP record: a sentence with a single marked polyphone and its gold label.
struct Example {
  std::u32string chars;  // marks removed
  std::size_t target_index = 0;
  PinyinSyllable label;
  std::string source_line;
  // Set at load time when a lexicon is supplied and `label` is not one of
  // the target character's candidates.
  bool flagged = false;

  char32_t target() const { return chars[target_index]; }
};

struct DatasetSplit {
  std::vector<Example> train;
  std::vector<Example> dev;
  std::vector<Example> test;
};

// Parses "即闽粤赣三▁角▁地带。" + "jiao3". Throws kBadMarking unless exactly one
// character is enclosed by a pair of U+2581 marks; kMalformedPinyin for bad labels.
Example ParseExample(std::string_view sent_line, std::string_view label_line);

// Inverse of ParseExample's mark removal.
std::string MarkSentence(std::u32string_view chars, std::size_t target_index);

struct LoadReport {
  std::size_t examples = 0;
  std::size_t flagged = 0;
};

// Reads a parallel pair of sentence / label files. Errors carry "file:line".
std::vector<Example> LoadExamples(const std::filesystem::path& sent_file,
                                  const std::filesystem::path& label_file,
                                  const Lexicon* lexicon = nullptr,
                                  LoadReport* report = nullptr);

// Reads {train,dev,test}.sent / .lb from `dir`.
DatasetSplit LoadSplit(const std::filesystem::path& dir, const Lexicon* lexicon = nullptr,
                       LoadReport* report = nullptr);

void WriteExamples(std::span<const Example> examples, const std::filesystem::path& sent_file,
                   const std::filesystem::path& label_file);
void WriteSplit(const DatasetSplit& split, const std::filesystem::path& dir);

// Bundled table of common traditional-only characters.
bool IsBundledTraditional(char32_t ch);

struct BuildOptions {
  std::uint64_t seed = 0;
  std::size_t min_per_poly = 10;
  std::size_t max_per_poly = 250;
  std::size_t min_len = 5;
  std::size_t max_len = 50;
  // Sentences containing any character for which this returns true are
  // dropped. Unset means: bundled table plus the lexicon's traditional-only set.
  std::function<bool(char32_t)> is_excluded;
};

// Filters raw sentences, marks one randomly chosen polyphone per kept
// sentence, then clips every polyphone group to [min_per_poly, max_per_poly].
// Length counts Han characters only. Output keeps input order.
std::vector<std::string> BuildDataset(std::span<const std::string> raw_sentences,
                                      const Lexicon& lexicon, const BuildOptions& options);

// Indices where both annotators chose the same pinyin. kLineCountMismatch on
// unequal lengths.
std::vector<std::size_t> MergeAnnotations(std::span<const PinyinSyllable> a,
                                          std::span<const PinyinSyllable> b);

enum class SplitRounding {
  // train = ceil(0.8n), dev = floor(0.1n), test = rest.
  kCeilTrain,
  // train = floor(0.8n), test = ceil(0.1n), dev = rest (train takes a lone
  // example). Reproduces the released CPP split sizes from group totals.
  kFloorTrain,
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

SplitSizes GroupSplitSizes(std::size_t n, SplitRounding rounding);

// Per target-character 8:1:1 split. Each group is shuffled with its own
// stream derived from (seed, code point), so a group's split does not depend
// on which other groups are present.
DatasetSplit StratifiedSplit(std::vector<Example> examples, std::uint64_t seed,
                             SplitRounding rounding = SplitRounding::kCeilTrain);

}  // namespace g2pm
