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

#include "g2pm/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string_view>

#include "g2pm/error.h"
#include "g2pm/utf8.h"

namespace g2pm {

std::string LexiconDiagnostics::Summary() const {
  std::ostringstream os;
  os << "lexicon: " << lines << " lines, " << comments << " comments, "
     << entries_used << " entries used, " << malformed_lines << " malformed, "
     << count_mismatch << " count mismatches, " << bad_pinyin_tokens
     << " unparsable pinyin tokens";
  return os.str();
}

bool Lexicon::IsPolyphone(char32_t ch) const {
  const auto* c = Find(ch);
  return c != nullptr && c->size() >= 2;
}

const std::vector<PinyinSyllable>& Lexicon::Candidates(char32_t ch) const {
  const auto* c = Find(ch);
  if (c == nullptr) {
    throw Error(ErrorCode::kUnknownCharacter, "'" + EncodeUtf8(ch) + "' not in lexicon");
  }
  return *c;
}

const std::vector<PinyinSyllable>* Lexicon::Find(char32_t ch) const {
  auto it = entries_.find(ch);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<char32_t> Lexicon::Characters() const {
  std::vector<char32_t> out;
  out.reserve(entries_.size());
  for (const auto& [ch, _] : entries_) out.push_back(ch);
  std::sort(out.begin(), out.end());
  return out;
}

void LexiconBuilder::Add(char32_t ch, PinyinSyllable pinyin) {
  auto& list = lexicon_.entries_[ch];
  if (std::find(list.begin(), list.end(), pinyin) == list.end()) {
    list.push_back(std::move(pinyin));
  }
}

Lexicon LexiconBuilder::Build() && {
  for (char32_t ch : traditional_) {
    if (!lexicon_.entries_.count(ch)) lexicon_.traditional_only_.insert(ch);
  }
  return std::move(lexicon_);
}

namespace {

struct CedictLine {
  std::u32string traditional;
  std::u32string simplified;
  std::vector<std::string_view> pinyin;
};

bool SplitCedictLine(std::string_view line, CedictLine& out) {
  auto sp1 = line.find(' ');
  if (sp1 == std::string_view::npos || sp1 == 0) return false;
  auto sp2 = line.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos || sp2 == sp1 + 1) return false;
  auto open = line.find('[', sp2);
  auto close = line.find(']', open == std::string_view::npos ? sp2 : open);
  if (open == std::string_view::npos || close == std::string_view::npos) return false;

  out.traditional = DecodeUtf8(line.substr(0, sp1));
  out.simplified = DecodeUtf8(line.substr(sp1 + 1, sp2 - sp1 - 1));
  out.pinyin.clear();
  std::string_view inner = line.substr(open + 1, close - open - 1);
  while (!inner.empty()) {
    auto sp = inner.find(' ');
    std::string_view tok = inner.substr(0, sp);
    if (!tok.empty()) out.pinyin.push_back(tok);
    if (sp == std::string_view::npos) break;
    inner.remove_prefix(sp + 1);
  }
  return !out.pinyin.empty();
}

}  // namespace

Lexicon Lexicon::Parse(std::istream& in, LexiconDiagnostics* diagnostics) {
  LexiconDiagnostics diag;
  LexiconBuilder builder;
  std::unordered_set<char32_t> traditional_variants;
  std::unordered_set<char32_t> simplified_seen;

  std::string raw;
  CedictLine entry;
  while (std::getline(in, raw)) {
    ++diag.lines;
    std::string_view line = StripCr(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      ++diag.comments;
      continue;
    }
    if (!SplitCedictLine(line, entry)) {
      ++diag.malformed_lines;
      continue;
    }
    simplified_seen.insert(entry.simplified.begin(), entry.simplified.end());
    if (entry.traditional.size() == entry.simplified.size()) {
      for (std::size_t k = 0; k < entry.traditional.size(); ++k) {
        if (entry.traditional[k] != entry.simplified[k] && IsHan(entry.traditional[k])) {
          traditional_variants.insert(entry.traditional[k]);
        }
      }
    }
    if (entry.simplified.size() != entry.pinyin.size()) {
      ++diag.count_mismatch;
      continue;
    }
    ++diag.entries_used;
    for (std::size_t k = 0; k < entry.simplified.size(); ++k) {
      const char32_t ch = entry.simplified[k];
      if (!IsHan(ch)) continue;
      try {
        builder.Add(ch, ParsePinyin(entry.pinyin[k]));
      } catch (const Error&) {
        ++diag.bad_pinyin_tokens;
      }
    }
  }
  for (char32_t ch : traditional_variants) {
    if (!simplified_seen.count(ch)) builder.AddTraditionalOnly(ch);
  }
  if (diagnostics != nullptr) *diagnostics = diag;
  return std::move(builder).Build();
}

Lexicon Lexicon::Load(const std::filesystem::path& path, LexiconDiagnostics* diagnostics) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  return Parse(in, diagnostics);
}

}  // namespace g2pm
