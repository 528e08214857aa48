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

#include "g2pm/corpus_stats.h"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "g2pm/utf8.h"

namespace g2pm {

namespace {

SplitSummary Summarize(const std::vector<Example>& examples) {
  SplitSummary s;
  s.sentences = examples.size();
  std::size_t chars = 0;
  std::set<char32_t> targets;
  for (const auto& ex : examples) {
    chars += ex.chars.size();
    targets.insert(ex.target());
  }
  s.mean_chars = examples.empty() ? 0.0 : static_cast<double>(chars) / examples.size();
  s.polyphones = targets.size();
  return s;
}

}  // namespace

CorpusStats ComputeStats(const DatasetSplit& split, const Lexicon* lexicon) {
  CorpusStats stats;
  stats.train = Summarize(split.train);
  stats.dev = Summarize(split.dev);
  stats.test = Summarize(split.test);

  std::map<char32_t, PolyphoneStats> per;
  std::size_t total_chars = 0;
  for (const auto* part : {&split.train, &split.dev, &split.test}) {
    for (const auto& ex : *part) {
      total_chars += ex.chars.size();
      auto& p = per[ex.target()];
      p.ch = ex.target();
      ++p.sentences;
      ++p.label_counts[ex.label.Render()];
      if (ex.flagged) ++stats.flagged_labels;
    }
  }
  stats.total.sentences = stats.train.sentences + stats.dev.sentences + stats.test.sentences;
  stats.total.mean_chars =
      stats.total.sentences == 0 ? 0.0 : static_cast<double>(total_chars) / stats.total.sentences;
  stats.total.polyphones = per.size();

  for (auto& [ch, p] : per) {
    std::size_t best = 0;
    for (const auto& [label, count] : p.label_counts) best = std::max(best, count);
    p.observed_pronunciations = p.label_counts.size();
    const auto* cands = lexicon != nullptr ? lexicon->Find(ch) : nullptr;
    p.possible_pronunciations = cands != nullptr ? cands->size() : p.observed_pronunciations;
    p.majority_share = static_cast<double>(best) / static_cast<double>(p.sentences);

    auto& row = stats.by_inventory_size[p.possible_pronunciations];
    ++row.polyphones;
    row.sentences += p.sentences;
    // Shares are ratios of integers; scale by 10 with integer arithmetic so
    // exact boundaries like 0.9 land in the lower bucket.
    std::size_t bucket = best * 10 / p.sentences;
    if (best * 10 % p.sentences == 0 && bucket > 0) --bucket;
    ++stats.majority_share_histogram[std::min<std::size_t>(bucket, 9)];
    stats.polyphones.push_back(std::move(p));
  }
  return stats;
}

std::size_t CorpusStats::PolyphonesWithSentencesIn(std::size_t lo, std::size_t hi) const {
  return static_cast<std::size_t>(std::count_if(
      polyphones.begin(), polyphones.end(),
      [&](const PolyphoneStats& p) { return p.sentences >= lo && p.sentences <= hi; }));
}

std::size_t CorpusStats::PolyphonesWithMajorityShareAbove(double threshold) const {
  return static_cast<std::size_t>(
      std::count_if(polyphones.begin(), polyphones.end(),
                    [&](const PolyphoneStats& p) { return p.majority_share > threshold; }));
}

InventoryRow CorpusStats::InventoryRange(std::size_t lo, std::size_t hi) const {
  InventoryRow out;
  for (const auto& [size, row] : by_inventory_size) {
    if (size >= lo && size <= hi) {
      out.polyphones += row.polyphones;
      out.sentences += row.sentences;
    }
  }
  return out;
}

std::string CorpusStats::ToText() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "              total     train       dev      test\n";
  auto row = [&](const char* name, auto get) {
    os << std::left << std::setw(12) << name << std::right;
    for (const auto* s : {&total, &train, &dev, &test}) os << std::setw(10) << get(*s);
    os << '\n';
  };
  row("sentences", [](const SplitSummary& s) { return s.sentences; });
  row("chars/sent", [](const SplitSummary& s) { return s.mean_chars; });
  row("polyphones", [](const SplitSummary& s) { return s.polyphones; });

  os << "\npronunciations  polyphones        sentences\n";
  auto pct = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : 100.0 * a / b; };
  for (const auto& [size, r] : by_inventory_size) {
    os << std::setw(14) << size << std::setw(7) << r.polyphones << " (" << std::setw(5)
       << pct(r.polyphones, total.polyphones) << "%)" << std::setw(8) << r.sentences << " ("
       << std::setw(5) << pct(r.sentences, total.sentences) << "%)\n";
  }

  os << "\npolyphones with 150-250 sentences: " << PolyphonesWithSentencesIn(150, 250)
     << "\npolyphones with <50 sentences: "
     << (total.polyphones - PolyphonesWithSentencesIn(50, SIZE_MAX))
     << "\npolyphones with majority share > 90%: " << PolyphonesWithMajorityShareAbove(0.9)
     << "\nmajority share histogram (tenths):";
  for (auto n : majority_share_histogram) os << ' ' << n;
  os << "\nflagged labels: " << flagged_labels << '\n';
  return os.str();
}

std::string CorpusStats::ToKeyValue() const {
  std::ostringstream os;
  os << std::setprecision(10);
  auto split = [&](const char* name, const SplitSummary& s) {
    os << name << ".sentences=" << s.sentences << '\n'
       << name << ".mean_chars=" << s.mean_chars << '\n'
       << name << ".polyphones=" << s.polyphones << '\n';
  };
  split("total", total);
  split("train", train);
  split("dev", dev);
  split("test", test);
  for (const auto& [size, r] : by_inventory_size) {
    os << "inventory." << size << ".polyphones=" << r.polyphones << '\n'
       << "inventory." << size << ".sentences=" << r.sentences << '\n';
  }
  for (std::size_t k = 0; k < majority_share_histogram.size(); ++k) {
    os << "majority_share_hist." << k << '=' << majority_share_histogram[k] << '\n';
  }
  os << "flagged_labels=" << flagged_labels << '\n';
  for (const auto& p : polyphones) {
    const std::string key = "polyphone." + EncodeUtf8(p.ch);
    os << key << ".sentences=" << p.sentences << '\n'
       << key << ".possible=" << p.possible_pronunciations << '\n'
       << key << ".majority_share=" << p.majority_share << '\n';
    for (const auto& [label, count] : p.label_counts) {
      os << key << ".label." << label << '=' << count << '\n';
    }
  }
  return os.str();
}

FrequencyReport PolyphoneFrequency(std::span<const std::string> raw_text, const Lexicon& lexicon) {
  std::unordered_map<char32_t, std::size_t> counts;
  FrequencyReport report;
  for (const auto& line : raw_text) {
    for (char32_t ch : DecodeUtf8(line)) {
      if (!IsHan(ch)) continue;
      ++counts[ch];
      ++report.total_chars;
    }
  }
  report.unique_chars = counts.size();
  for (const auto& [ch, n] : counts) {
    if (!lexicon.IsPolyphone(ch)) continue;
    ++report.unique_polyphones;
    report.polyphone_chars += n;
    report.ranked.emplace_back(ch, static_cast<double>(n) / report.total_chars);
  }
  std::sort(report.ranked.begin(), report.ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return report;
}

}  // namespace g2pm
