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

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "g2pm/error.h"
#include "g2pm/utf8.h"

namespace g2pm {

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kPolyphoneNeural: return "polyphone_neural";
    case TokenKind::kMonophoneDict: return "monophone_dict";
    case TokenKind::kPassthrough: return "passthrough";
  }
  return "unknown";
}

std::vector<std::pair<std::size_t, std::size_t>> SplitSentences(std::u32string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t ch = text[i];
    if (ch == U'。' || ch == U'！' || ch == U'？' || ch == U'；' || ch == U'\n') {
      spans.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  if (begin < text.size()) spans.emplace_back(begin, text.size());
  return spans;
}

Converter::Converter(const Lexicon& lexicon, const ModelBundle* model, ConvertOptions options)
    : lexicon_(lexicon), model_(model), options_(options) {}

bool Converter::IsNeuralTarget(char32_t ch) const {
  if (model_ == nullptr) return false;
  // Bundles without a recorded target set fall back to the lexicon's view.
  if (model_->observed_classes.empty()) return lexicon_.IsPolyphone(ch);
  return model_->observed_classes.count(ch) != 0;
}

std::vector<Token> Converter::Convert(std::string_view text,
                                      ConvertDiagnostics* diagnostics) const {
  return Run(text, true, diagnostics);
}

std::vector<Token> Converter::ConvertPerTarget(std::string_view text,
                                               ConvertDiagnostics* diagnostics) const {
  return Run(text, false, diagnostics);
}

std::vector<Token> Converter::Run(std::string_view text, bool shared_encoder,
                                  ConvertDiagnostics* diagnostics) const {
  if (model_ == nullptr) throw Error(ErrorCode::kModelNotLoaded, "no model bundle loaded");
  ConvertDiagnostics diag;
  const std::u32string chars = DecodeUtf8(text);
  std::vector<Token> tokens(chars.size());

  for (const auto& [begin, end] : SplitSentences(chars)) {
    const std::u32string_view sentence(chars.data() + begin, end - begin);
    if (sentence.size() > options_.long_sentence_warning) ++diag.long_sentences;

    std::vector<std::size_t> targets;
    for (std::size_t t = 0; t < sentence.size(); ++t) {
      const char32_t ch = sentence[t];
      Token& tok = tokens[begin + t];
      tok.source = EncodeUtf8(ch);
      if (IsNeuralTarget(ch)) {
        tok.kind = TokenKind::kPolyphoneNeural;
        targets.push_back(t);
      } else if (const auto* cands = lexicon_.Find(ch)) {
        tok.kind = TokenKind::kMonophoneDict;
        tok.pinyin = cands->front();
        if (cands->size() > 1) ++diag.multi_candidate;
      } else {
        tok.kind = TokenKind::kPassthrough;
        if (IsHan(ch)) ++diag.unknown_chars;
      }
    }
    if (targets.empty()) continue;

    const auto ids = model_->vocab.Encode(sentence);
    std::vector<Vector<float>> states;
    if (shared_encoder) states = Encode(model_->params, ids);
    for (std::size_t t : targets) {
      const Vector<float> logits = shared_encoder ? Classify(model_->params, states[t])
                                                  : Forward(model_->params, ids, t);
      std::optional<std::vector<int>> mask;
      if (options_.use_mask) mask = model_->DefaultMask(sentence[t], &lexicon_);
      auto prediction = PredictFromLogits(logits, model_->labels, mask ? &*mask : nullptr);
      Token& tok = tokens[begin + t];
      tok.pinyin = std::move(prediction.pinyin);
      tok.probs = std::move(prediction.probs);
    }
  }
  if (diagnostics != nullptr) *diagnostics = diag;
  return tokens;
}

std::string FormatPlain(const std::vector<Token>& tokens) {
  std::string out;
  bool in_passthrough = false;
  for (const auto& tok : tokens) {
    if (tok.kind == TokenKind::kPassthrough) {
      const bool space = tok.source == " " || tok.source == "\t" || tok.source == "\n" ||
                         tok.source == "\r" || tok.source == "　";
      if (space) {
        in_passthrough = false;
        continue;
      }
      if (!in_passthrough && !out.empty()) out += ' ';
      out += tok.source;
      in_passthrough = true;
      continue;
    }
    if (!out.empty()) out += ' ';
    out += tok.pinyin->Render();
    in_passthrough = false;
  }
  return out;
}

std::string FormatJsonLines(const std::vector<Token>& tokens, const LabelSpace* labels,
                            std::size_t top_k) {
  std::string out;
  for (const auto& tok : tokens) {
    nlohmann::json j;
    j["char"] = tok.source;
    j["kind"] = TokenKindName(tok.kind);
    j["pinyin"] = tok.pinyin ? nlohmann::json(tok.pinyin->Render()) : nlohmann::json(nullptr);
    if (!tok.probs.empty() && labels != nullptr) {
      std::vector<std::size_t> order(tok.probs.size());
      std::iota(order.begin(), order.end(), 0);
      const std::size_t k = std::min(top_k, order.size());
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                        [&](std::size_t a, std::size_t b) {
                          return tok.probs[a] != tok.probs[b] ? tok.probs[a] > tok.probs[b] : a < b;
                        });
      auto top = nlohmann::json::array();
      for (std::size_t i = 0; i < k; ++i) {
        top.push_back({labels->Label(static_cast<int>(order[i])), tok.probs[order[i]]});
      }
      j["top"] = std::move(top);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace g2pm
