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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "g2pm/error.h"
#include "test_support.h"

namespace g2pm {
namespace {

Lexicon FromText(const std::string& text, LexiconDiagnostics* diag = nullptr) {
  std::istringstream in(text);
  return Lexicon::Parse(in, diag);
}

std::vector<std::string> Rendered(const Lexicon& lex, char32_t ch) {
  std::vector<std::string> out;
  for (const auto& p : lex.Candidates(ch)) out.push_back(p.Render());
  return out;
}

using Strings = std::vector<std::string>;

TEST(Lexicon, UnionOfSingleCharacterEntries) {
  const Lexicon lex = FromText("的 的 [de5] /of/\n的 的 [di4] /aim/\n");
  EXPECT_EQ(Rendered(lex, U'的'), (Strings{"de5", "di4"}));
  EXPECT_TRUE(lex.IsPolyphone(U'的'));
}

TEST(Lexicon, CommentsProduceNothing) {
  LexiconDiagnostics diag;
  const Lexicon lex = FromText("# comment\n", &diag);
  EXPECT_EQ(lex.size(), 0u);
  EXPECT_EQ(diag.comments, 1u);
}

TEST(Lexicon, MultiCharacterEntriesAlignPositionally) {
  const Lexicon lex = FromText("目的 目的 [mu4 di4] /purpose/\n");
  EXPECT_EQ(Rendered(lex, U'目'), (Strings{"mu4"}));
  EXPECT_EQ(Rendered(lex, U'的'), (Strings{"di4"}));
}

TEST(Lexicon, PolyphoneDetection) {
  const Lexicon lex = FromText("的 的 [de5] /a/\n的 的 [di4] /b/\n的 的 [di2] /c/\n的 的 [di1] /d/\n"
                               "目 目 [mu4] /eye/\n");
  EXPECT_TRUE(lex.IsPolyphone(U'的'));
  EXPECT_FALSE(lex.IsPolyphone(U'目'));
  EXPECT_FALSE(lex.IsPolyphone(U'猫'));
  for (char32_t ch : lex.Characters()) {
    EXPECT_EQ(lex.IsPolyphone(ch), lex.Candidates(ch).size() >= 2);
  }
}

TEST(Lexicon, UnknownCharacter) {
  const Lexicon lex = FromText("目 目 [mu4] /eye/\n");
  try {
    lex.Candidates(U'猫');
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownCharacter);
  }
  EXPECT_EQ(lex.Find(U'猫'), nullptr);
}

TEST(Lexicon, SampleFileWithDiagnostics) {
  LexiconDiagnostics diag;
  const Lexicon lex = Lexicon::Load(testing::FixtureDir() / "mini_cedict.u8", &diag);
  EXPECT_EQ(diag.lines, 27u);
  EXPECT_EQ(diag.comments, 2u);
  EXPECT_EQ(diag.entries_used, 22u);
  EXPECT_EQ(diag.malformed_lines, 2u);
  EXPECT_EQ(diag.count_mismatch, 1u);
  EXPECT_EQ(diag.bad_pinyin_tokens, 0u);
  EXPECT_FALSE(diag.Summary().empty());

  EXPECT_EQ(Rendered(lex, U'的'), (Strings{"de5", "di4", "di2", "di1"}));
  EXPECT_EQ(Rendered(lex, U'什'), (Strings{"shen2", "shi2"}));
  EXPECT_EQ(Rendered(lex, U'么'), (Strings{"me5", "ma2", "yao1"}));
  EXPECT_EQ(Rendered(lex, U'吕'), (Strings{"lu:3"}));
  EXPECT_EQ(Rendered(lex, U'今'), (Strings{"jin1"}));
  EXPECT_FALSE(lex.Contains(U'行'));
  // keyed by simplified headword only
  EXPECT_FALSE(lex.Contains(U'來'));
  EXPECT_TRUE(lex.Contains(U'来'));
  EXPECT_TRUE(lex.traditional_only().count(U'來'));
  EXPECT_TRUE(lex.traditional_only().count(U'國'));
  EXPECT_FALSE(lex.traditional_only().count(U'来'));
}

TEST(Lexicon, IdempotentUnderSelfConcatenation) {
  std::ifstream in(testing::FixtureDir() / "mini_cedict.u8");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const Lexicon once = FromText(text);
  const Lexicon twice = FromText(text + text);
  ASSERT_EQ(once.Characters(), twice.Characters());
  for (char32_t ch : once.Characters()) EXPECT_EQ(once.Candidates(ch), twice.Candidates(ch));
}

TEST(Lexicon, CrlfAccepted) {
  const Lexicon lex = FromText("中 中 [zhong1] /middle/\r\n中 中 [zhong4] /hit/\r\n");
  EXPECT_EQ(Rendered(lex, U'中'), (Strings{"zhong1", "zhong4"}));
}

TEST(Lexicon, BadPinyinTokensAreCounted) {
  LexiconDiagnostics diag;
  const Lexicon lex = FromText("中 中 [zhong] /x/\n中 中 [zhong1] /y/\n", &diag);
  EXPECT_EQ(diag.bad_pinyin_tokens, 1u);
  EXPECT_EQ(Rendered(lex, U'中'), (Strings{"zhong1"}));
}

TEST(Lexicon, NonHanCharactersAreNotKeyed) {
  const Lexicon lex = FromText("A型 A型 [A xing2] /type A/\n");
  EXPECT_FALSE(lex.Contains(U'A'));
  EXPECT_EQ(Rendered(lex, U'型'), (Strings{"xing2"}));
}

TEST(Lexicon, InventoryFixtureCandidateSets) {
  const auto rows = testing::LoadInventory();
  ASSERT_EQ(rows.size(), 623u);
  const Lexicon lex = testing::InventoryLexicon(rows);
  EXPECT_EQ(lex.size(), 623u);
  for (const auto& row : rows) {
    Strings expected;
    for (const auto& [py, _] : row.pinyin) expected.push_back(py);
    EXPECT_EQ(Rendered(lex, row.ch), expected);
    EXPECT_TRUE(lex.IsPolyphone(row.ch));
  }
  EXPECT_EQ(Rendered(lex, U'角'), (Strings{"jiao3", "jue2"}));
  EXPECT_EQ(Rendered(lex, U'万'), (Strings{"wan4", "mo4"}));
  EXPECT_EQ(Rendered(lex, U'的'), (Strings{"de5", "di4", "di2", "di1"}));
}

}  // namespace
}  // namespace g2pm
