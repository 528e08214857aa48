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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g2pm/lexicon.h"
#include "g2pm/model.h"
#include "g2pm/pinyin.h"

namespace g2pm {

enum class TokenKind { kPolyphoneNeural, kMonophoneDict, kPassthrough };

std::string_view TokenKindName(TokenKind kind);

// One input character and how it was resolved.
struct Token {
  std::string source;  // UTF-8 of exactly one input character
  TokenKind kind = TokenKind::kPassthrough;
  std::optional<PinyinSyllable> pinyin;  // set iff kind != kPassthrough
  std::vector<double> probs;             // class distribution, neural tokens only
};

struct ConvertOptions {
  bool use_mask = true;
  // Sentences longer than this (in characters) are still converted whole but
  // counted in ConvertDiagnostics::long_sentences.
  std::size_t long_sentence_warning = 50;
};

struct ConvertDiagnostics {
  std::size_t unknown_chars = 0;      // Han characters absent from lexicon and model
  std::size_t multi_candidate = 0;    // lexicon polyphones the model was not trained on
  std::size_t long_sentences = 0;
};

// Text -> pinyin. Characters the model was trained to disambiguate are
// classified from one Bi-LSTM pass per sentence; other lexicon characters take
// their first dictionary candidate; everything else passes through verbatim.
class Converter {
 public:
  // `model` may be null; Convert then throws kModelNotLoaded.
  Converter(const Lexicon& lexicon, const ModelBundle* model, ConvertOptions options = {});

  std::vector<Token> Convert(std::string_view text, ConvertDiagnostics* diagnostics = nullptr) const;

  // Same routing, but every polyphone runs its own full forward pass.
  std::vector<Token> ConvertPerTarget(std::string_view text,
                                      ConvertDiagnostics* diagnostics = nullptr) const;

  bool IsNeuralTarget(char32_t ch) const;

 private:
  std::vector<Token> Run(std::string_view text, bool shared_encoder,
                         ConvertDiagnostics* diagnostics) const;

  const Lexicon& lexicon_;
  const ModelBundle* model_;
  ConvertOptions options_;
};

// Sentence spans [begin, end) split after '。', '！', '？', '；' and newline.
std::vector<std::pair<std::size_t, std::size_t>> SplitSentences(std::u32string_view text);

// Space-joined pinyin; consecutive passthrough characters form one word and
// whitespace is dropped.
std::string FormatPlain(const std::vector<Token>& tokens);

// One JSON object per token: {"char","kind","pinyin","top":[[label,p],...]}.
std::string FormatJsonLines(const std::vector<Token>& tokens, const LabelSpace* labels,
                            std::size_t top_k = 3);

}  // namespace g2pm
