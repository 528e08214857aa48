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

#include "g2pm/convert.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "g2pm/error.h"
#include "g2pm/utf8.h"
#include "test_support.h"

namespace g2pm {
namespace {

Lexicon MiniLexicon() { return Lexicon::Load(testing::FixtureDir() / "mini_cedict.u8"); }

ModelBundle IntroBundle(std::uint64_t seed = 1) {
  auto b = testing::RandomBundle(U"今天来的目是什么中国", {"de5", "di1", "di2", "di4", "ma2",
                                                          "me5", "shen2", "shi2", "zhong1", "zhong4"},
                                 ModelConfig{0, 8, 8, 1, 8, 0}, seed);
  b.observed_classes[U'的'] = {0, 3};
  b.observed_classes[U'什'] = {6, 7};
  b.observed_classes[U'么'] = {4, 5};
  return b;
}

std::vector<std::string> Pinyin(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.pinyin ? t.pinyin->Render() : "-");
  return out;
}

TEST(Convert, EmptyAndAscii) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle();
  const Converter conv(lex, &model);
  EXPECT_TRUE(conv.Convert("").empty());
  const auto tokens = conv.Convert("Hello, world 42!");
  EXPECT_EQ(tokens.size(), 16u);
  for (const auto& t : tokens) {
    EXPECT_EQ(t.kind, TokenKind::kPassthrough);
    EXPECT_FALSE(t.pinyin.has_value());
  }
  EXPECT_EQ(FormatPlain(tokens), "Hello, world 42!");
}

TEST(Convert, ModelRequired) {
  const Lexicon lex = MiniLexicon();
  const Converter conv(lex, nullptr);
  try {
    conv.Convert("今天");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kModelNotLoaded);
  }
}

TEST(Convert, RoutingAndMonophones) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle();
  const Converter conv(lex, &model);
  ConvertDiagnostics diag;
  const auto tokens = conv.Convert("今天来的目的是什么？猫中", &diag);
  ASSERT_EQ(tokens.size(), 12u);
  const std::vector<TokenKind> kinds = {
      TokenKind::kMonophoneDict,   TokenKind::kMonophoneDict,   TokenKind::kMonophoneDict,
      TokenKind::kPolyphoneNeural, TokenKind::kMonophoneDict,   TokenKind::kPolyphoneNeural,
      TokenKind::kMonophoneDict,   TokenKind::kPolyphoneNeural, TokenKind::kPolyphoneNeural,
      TokenKind::kPassthrough,     TokenKind::kPassthrough,     TokenKind::kMonophoneDict};
  for (std::size_t i = 0; i < kinds.size(); ++i) EXPECT_EQ(tokens[i].kind, kinds[i]) << i;
  const auto py = Pinyin(tokens);
  EXPECT_EQ(py[0], "jin1");
  EXPECT_EQ(py[1], "tian1");
  EXPECT_EQ(py[2], "lai2");
  EXPECT_EQ(py[4], "mu4");
  EXPECT_EQ(py[6], "shi4");
  EXPECT_EQ(py[11], "zhong1");
  EXPECT_EQ(diag.unknown_chars, 1u);
  EXPECT_EQ(diag.multi_candidate, 1u);
  for (std::size_t i : {3u, 5u, 7u, 8u}) {
    EXPECT_EQ(tokens[i].probs.size(), model.labels.size());
  }
}

TEST(Convert, MaskedOutputStaysInsideCandidates) {
  const Lexicon lex = MiniLexicon();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ModelBundle model = IntroBundle(seed);
    const Converter conv(lex, &model);
    for (const auto& t : conv.Convert("今天来的目的是什么？的的什么么的")) {
      if (!t.pinyin) continue;
      const auto& cands = lex.Candidates(DecodeUtf8(t.source)[0]);
      EXPECT_NE(std::find(cands.begin(), cands.end(), *t.pinyin), cands.end()) << t.source;
    }
  }
}

TEST(Convert, UnmaskedMayLeaveCandidates) {
  const Lexicon lex = MiniLexicon();
  bool escaped = false;
  for (std::uint64_t seed = 1; seed <= 30 && !escaped; ++seed) {
    const ModelBundle model = IntroBundle(seed);
    const Converter conv(lex, &model, ConvertOptions{false, 50});
    for (const auto& t : conv.Convert("今天来的目的是什么")) {
      if (t.kind != TokenKind::kPolyphoneNeural) continue;
      const auto& cands = lex.Candidates(DecodeUtf8(t.source)[0]);
      escaped |= std::find(cands.begin(), cands.end(), *t.pinyin) == cands.end();
    }
  }
  EXPECT_TRUE(escaped);
}

TEST(Convert, SharedEncoderMatchesPerTarget) {
  const Lexicon lex = MiniLexicon();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ModelBundle model = IntroBundle(seed);
    for (bool mask : {true, false}) {
      const Converter conv(lex, &model, ConvertOptions{mask, 50});
      const std::string text = "今天来的目的是什么？的的什么么的。中国的目的";
      const auto shared = conv.Convert(text);
      const auto single = conv.ConvertPerTarget(text);
      ASSERT_EQ(shared.size(), single.size());
      for (std::size_t i = 0; i < shared.size(); ++i) {
        EXPECT_EQ(shared[i].pinyin, single[i].pinyin);
        EXPECT_EQ(shared[i].probs, single[i].probs);
      }
    }
  }
}

TEST(Convert, SentenceConcatenation) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle(4);
  const Converter conv(lex, &model);
  const std::vector<std::string> pieces = {"今天来的目的。", "是什么？", "的的。", "中国的目的",
                                           "", "abc。"};
  for (const auto& a : pieces) {
    for (const auto& b : pieces) {
      if (a.empty() || DecodeUtf8(a).back() != U'。') continue;
      auto left = conv.Convert(a);
      const auto right = conv.Convert(b);
      left.insert(left.end(), right.begin(), right.end());
      const auto joint = conv.Convert(a + b);
      ASSERT_EQ(joint.size(), left.size());
      for (std::size_t i = 0; i < joint.size(); ++i) {
        EXPECT_EQ(joint[i].source, left[i].source);
        EXPECT_EQ(joint[i].pinyin, left[i].pinyin);
        EXPECT_EQ(joint[i].probs, left[i].probs);
      }
    }
  }
}

TEST(Convert, CharacterCountPreserved) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle(5);
  const Converter conv(lex, &model);
  Rng rng(3);
  const std::u32string alphabet = U"今天来的目是什么？。中国猫 aZ9\n，";
  for (int n = 0; n < 200; ++n) {
    std::u32string text;
    const std::size_t len = rng.Below(40);
    for (std::size_t k = 0; k < len; ++k) text.push_back(alphabet[rng.Below(alphabet.size())]);
    const auto tokens = conv.Convert(EncodeUtf8(text));
    ASSERT_EQ(tokens.size(), text.size());
    std::string joined;
    for (const auto& t : tokens) {
      EXPECT_EQ(DecodeUtf8(t.source).size(), 1u);
      joined += t.source;
    }
    EXPECT_EQ(joined, EncodeUtf8(text));
  }
}

TEST(Convert, LongSentenceWarning) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle();
  const Converter conv(lex, &model);
  ConvertDiagnostics diag;
  std::string text;
  for (int k = 0; k < 51; ++k) text += "天";
  conv.Convert(text + "。今天。", &diag);
  EXPECT_EQ(diag.long_sentences, 1u);
}

TEST(Convert, LexiconPolyphonesWhenBundleHasNoTargetSet) {
  const Lexicon lex = MiniLexicon();
  ModelBundle model = IntroBundle();
  model.observed_classes.clear();
  const Converter conv(lex, &model);
  EXPECT_TRUE(conv.IsNeuralTarget(U'中'));
  EXPECT_FALSE(conv.IsNeuralTarget(U'今'));
}

TEST(SplitSentences, Boundaries) {
  const auto spans = SplitSentences(U"今天。来！的？目；是\n什么");
  const std::vector<std::pair<std::size_t, std::size_t>> expected = {
      {0, 3}, {3, 5}, {5, 7}, {7, 9}, {9, 11}, {11, 13}};
  EXPECT_EQ(spans, expected);
  EXPECT_TRUE(SplitSentences(U"").empty());
}

TEST(Format, PlainAndJsonLines) {
  const Lexicon lex = MiniLexicon();
  const ModelBundle model = IntroBundle();
  const Converter conv(lex, &model);
  const auto tokens = conv.Convert("今天 OK的？");
  const std::string plain = FormatPlain(tokens);
  EXPECT_EQ(plain.rfind("jin1 tian1 OK ", 0), 0u) << plain;
  EXPECT_EQ(plain.substr(plain.size() - 4), " ？");

  std::istringstream lines(FormatJsonLines(tokens, &model.labels, 2));
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(lines, line)) records.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(records.size(), tokens.size());
  EXPECT_EQ(records[0]["char"], "今");
  EXPECT_EQ(records[0]["kind"], "monophone_dict");
  EXPECT_EQ(records[0]["pinyin"], "jin1");
  EXPECT_TRUE(records[2]["pinyin"].is_null());
  EXPECT_EQ(records[5]["kind"], "polyphone_neural");
  ASSERT_EQ(records[5]["top"].size(), 2u);
  EXPECT_GE(records[5]["top"][0][1].get<double>(), records[5]["top"][1][1].get<double>());
}

}  // namespace
}  // namespace g2pm
