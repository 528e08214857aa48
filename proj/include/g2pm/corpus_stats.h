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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "g2pm/corpus.h"
#include "g2pm/lexicon.h"

namespace g2pm {

struct SplitSummary {
  std::size_t sentences = 0;
  double mean_chars = 0.0;  // unmarked characters per sentence
  std::size_t polyphones = 0;
};

struct PolyphoneStats {
  char32_t ch = 0;
  std::size_t sentences = 0;
  std::map<std::string, std::size_t> label_counts;  // canonical pinyin -> count
  // Lexicon candidate count when the character is in the supplied lexicon,
  // otherwise the number of distinct observed labels.
  std::size_t possible_pronunciations = 0;
  std::size_t observed_pronunciations = 0;
  double majority_share = 0.0;
};

struct InventoryRow {
  std::size_t polyphones = 0;
  std::size_t sentences = 0;
};

struct CorpusStats {
  SplitSummary total, train, dev, test;
  std::vector<PolyphoneStats> polyphones;  // sorted by code point
  // possible_pronunciations -> row
  std::map<std::size_t, InventoryRow> by_inventory_size;
  // Majority share bucketed by tenths: index k counts shares in (k/10, (k+1)/10],
  // with bucket 0 also holding share 0.
  std::vector<std::size_t> majority_share_histogram = std::vector<std::size_t>(10, 0);
  std::size_t flagged_labels = 0;

  std::size_t PolyphonesWithSentencesIn(std::size_t lo, std::size_t hi) const;
  std::size_t PolyphonesWithMajorityShareAbove(double threshold) const;
  // Aggregates inventory sizes `lo`..`hi` inclusive.
  InventoryRow InventoryRange(std::size_t lo, std::size_t hi) const;

  std::string ToText() const;
  // One "key=value" per line, stable key order.
  std::string ToKeyValue() const;
};

// `lexicon` may be null; then inventory sizes come from observed labels.
CorpusStats ComputeStats(const DatasetSplit& split, const Lexicon* lexicon);

struct FrequencyReport {
  std::size_t total_chars = 0;       // Han characters only
  std::size_t unique_chars = 0;
  std::size_t polyphone_chars = 0;   // occurrences of lexicon polyphones
  std::size_t unique_polyphones = 0;
  // (character, share of all Han characters), share descending then code point.
  std::vector<std::pair<char32_t, double>> ranked;
};

FrequencyReport PolyphoneFrequency(std::span<const std::string> raw_text, const Lexicon& lexicon);

}  // namespace g2pm
