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

#include "g2pm/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "g2pm/error.h"
#include "g2pm/rng.h"
#include "g2pm/utf8.h"

namespace g2pm {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

Example ParseExample(std::string_view sent_line, std::string_view label_line) {
  sent_line = StripCr(sent_line);
  const std::u32string decoded = DecodeUtf8(sent_line);

  std::vector<std::size_t> marks;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (decoded[i] == kMarkChar) marks.push_back(i);
  }
  if (marks.empty()) throw Error(ErrorCode::kBadMarking, "no marked character");
  if (marks.size() == 1) throw Error(ErrorCode::kBadMarking, "unclosed mark");
  if (marks.size() > 2) throw Error(ErrorCode::kBadMarking, "more than one marked span");
  if (marks[1] != marks[0] + 2) {
    throw Error(ErrorCode::kBadMarking, "marked span must hold exactly one character");
  }

  Example ex;
  ex.chars.reserve(decoded.size() - 2);
  for (char32_t ch : decoded) {
    if (ch != kMarkChar) ex.chars.push_back(ch);
  }
  ex.target_index = marks[0];
  ex.label = ParsePinyin(Trim(label_line));
  ex.source_line = std::string(sent_line);
  return ex;
}

std::string MarkSentence(std::u32string_view chars, std::size_t target_index) {
  if (target_index >= chars.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "target index past sentence end");
  }
  std::u32string marked;
  marked.reserve(chars.size() + 2);
  marked.append(chars.substr(0, target_index));
  marked.push_back(kMarkChar);
  marked.push_back(chars[target_index]);
  marked.push_back(kMarkChar);
  marked.append(chars.substr(target_index + 1));
  return EncodeUtf8(marked);
}

std::vector<Example> LoadExamples(const std::filesystem::path& sent_file,
                                  const std::filesystem::path& label_file,
                                  const Lexicon* lexicon, LoadReport* report) {
  const auto sents = ReadLines(sent_file);
  const auto labels = ReadLines(label_file);
  if (sents.size() != labels.size()) {
    throw Error(ErrorCode::kLineCountMismatch,
                sent_file.string() + " has " + std::to_string(sents.size()) + " lines, " +
                    label_file.string() + " has " + std::to_string(labels.size()));
  }
  std::vector<Example> out;
  out.reserve(sents.size());
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < sents.size(); ++i) {
    try {
      out.push_back(ParseExample(sents[i], labels[i]));
    } catch (const Error& e) {
      throw Error(e.code(), sent_file.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
    if (lexicon != nullptr) {
      const auto* cands = lexicon->Find(out.back().target());
      const auto& label = out.back().label;
      if (cands == nullptr || std::find(cands->begin(), cands->end(), label) == cands->end()) {
        out.back().flagged = true;
        ++flagged;
      }
    }
  }
  if (report != nullptr) {
    report->examples += out.size();
    report->flagged += flagged;
  }
  return out;
}

DatasetSplit LoadSplit(const std::filesystem::path& dir, const Lexicon* lexicon,
                       LoadReport* report) {
  DatasetSplit split;
  split.train = LoadExamples(dir / "train.sent", dir / "train.lb", lexicon, report);
  split.dev = LoadExamples(dir / "dev.sent", dir / "dev.lb", lexicon, report);
  split.test = LoadExamples(dir / "test.sent", dir / "test.lb", lexicon, report);
  return split;
}

void WriteExamples(std::span<const Example> examples, const std::filesystem::path& sent_file,
                   const std::filesystem::path& label_file) {
  std::ofstream sent(sent_file, std::ios::binary);
  std::ofstream label(label_file, std::ios::binary);
  if (!sent || !label) throw Error(ErrorCode::kIo, "cannot write " + sent_file.string());
  for (const auto& ex : examples) {
    sent << MarkSentence(ex.chars, ex.target_index) << '\n';
    label << ex.label.Render() << '\n';
  }
}

void WriteSplit(const DatasetSplit& split, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  WriteExamples(split.train, dir / "train.sent", dir / "train.lb");
  WriteExamples(split.dev, dir / "dev.sent", dir / "dev.lb");
  WriteExamples(split.test, dir / "test.sent", dir / "test.lb");
}

std::vector<std::string> BuildDataset(std::span<const std::string> raw_sentences,
                                      const Lexicon& lexicon, const BuildOptions& options) {
  auto excluded = options.is_excluded;
  if (!excluded) {
    excluded = [&lexicon](char32_t ch) {
      return IsBundledTraditional(ch) || lexicon.traditional_only().count(ch) != 0;
    };
  }

  Rng rng(options.seed);
  struct Candidate {
    std::size_t order;
    std::string marked;
  };
  std::map<char32_t, std::vector<Candidate>> groups;

  std::size_t order = 0;
  for (const auto& raw : raw_sentences) {
    const std::u32string chars = DecodeUtf8(Trim(raw));
    std::size_t han = 0;
    bool reject = false;
    std::vector<std::size_t> poly_positions;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      const char32_t ch = chars[i];
      if (ch == kMarkChar || excluded(ch)) {
        reject = true;
        break;
      }
      if (!IsHan(ch)) continue;
      ++han;
      if (lexicon.IsPolyphone(ch)) poly_positions.push_back(i);
    }
    if (reject || han < options.min_len || han > options.max_len || poly_positions.empty()) {
      continue;
    }
    const std::size_t pick = poly_positions[rng.Below(poly_positions.size())];
    groups[chars[pick]].push_back({order++, MarkSentence(chars, pick)});
  }

  std::vector<Candidate> kept;
  for (auto& [ch, members] : groups) {
    if (members.size() < options.min_per_poly) continue;
    if (members.size() > options.max_per_poly) {
      rng.Shuffle(std::span<Candidate>(members));
      members.resize(options.max_per_poly);
    }
    for (auto& m : members) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Candidate& a, const Candidate& b) { return a.order < b.order; });

  std::vector<std::string> out;
  out.reserve(kept.size());
  for (auto& c : kept) out.push_back(std::move(c.marked));
  return out;
}

std::vector<std::size_t> MergeAnnotations(std::span<const PinyinSyllable> a,
                                          std::span<const PinyinSyllable> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLineCountMismatch,
                "annotation lists differ in length: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) kept.push_back(i);
  }
  return kept;
}

SplitSizes GroupSplitSizes(std::size_t n, SplitRounding rounding) {
  SplitSizes s;
  if (rounding == SplitRounding::kCeilTrain) {
    s.train = (8 * n + 9) / 10;
    s.dev = n / 10;
    s.test = n - s.train - s.dev;
  } else {
    s.train = (8 * n) / 10;
    s.test = (n + 9) / 10;
    if (s.train == 0 && n > 0) {
      s.train = 1;
      s.test = n - 1;
    }
    s.dev = n - s.train - s.test;
  }
  return s;
}

DatasetSplit StratifiedSplit(std::vector<Example> examples, std::uint64_t seed,
                             SplitRounding rounding) {
  std::map<char32_t, std::vector<Example>> groups;
  for (auto& ex : examples) groups[ex.target()].push_back(std::move(ex));

  DatasetSplit split;
  for (auto& [ch, members] : groups) {
    Rng rng(MixSeed(seed, ch));
    rng.Shuffle(std::span<Example>(members));
    const SplitSizes sizes = GroupSplitSizes(members.size(), rounding);
    auto it = std::make_move_iterator(members.begin());
    split.train.insert(split.train.end(), it, it + sizes.train);
    it += sizes.train;
    split.dev.insert(split.dev.end(), it, it + sizes.dev);
    it += sizes.dev;
    split.test.insert(split.test.end(), it, it + sizes.test);
  }
  return split;
}

}  // namespace g2pm
