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

#include "g2pm/model.h"

#include <algorithm>
#include <set>

#include "g2pm/error.h"
#include "g2pm/utf8.h"

namespace g2pm {

void ModelConfig::Validate() const {
  if (vocab_size < 1 || embed_dim < 1 || hidden < 2 || num_layers < 1 || fc_dim < 1 ||
      num_classes < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "model config: every dimension must be >= 1");
  }
  if (hidden % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "model config: hidden size must be even");
  }
}

std::int64_t CountParams(const ModelConfig& c) {
  const std::int64_t hd = c.direction_hidden();
  std::int64_t total = c.vocab_size * c.embed_dim;
  for (std::int64_t l = 0; l < c.num_layers; ++l) {
    const std::int64_t in = l == 0 ? c.embed_dim : c.hidden;
    total += 2 * (4 * hd * (in + hd) + 4 * hd);
  }
  total += c.fc_dim * c.hidden + c.fc_dim;
  total += c.num_classes * c.fc_dim + c.num_classes;
  return total;
}

VocabTable::VocabTable(std::vector<char32_t> chars) : chars_(std::move(chars)) {
  for (std::size_t k = 0; k < chars_.size(); ++k) {
    index_.emplace(chars_[k], static_cast<int>(k) + 2);
  }
}

int VocabTable::Id(char32_t ch) const {
  auto it = index_.find(ch);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> VocabTable::Encode(std::u32string_view text) const {
  std::vector<int> ids;
  ids.reserve(text.size());
  for (char32_t ch : text) ids.push_back(Id(ch));
  return ids;
}

LabelSpace::LabelSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  for (std::size_t k = 0; k < labels_.size(); ++k) index_.emplace(labels_[k], static_cast<int>(k));
}

int LabelSpace::Id(const PinyinSyllable& pinyin) const { return Id(pinyin.Render()); }

int LabelSpace::Id(const std::string& canonical) const {
  auto it = index_.find(canonical);
  return it == index_.end() ? -1 : it->second;
}

std::pair<VocabTable, LabelSpace> BuildSpaces(std::span<const Example> train) {
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "no training examples");
  std::unordered_map<char32_t, std::size_t> freq;
  std::vector<std::string> labels;
  for (const auto& ex : train) {
    for (char32_t ch : ex.chars) ++freq[ch];
    labels.push_back(ex.label.Render());
  }
  std::vector<std::pair<char32_t, std::size_t>> ordered(freq.begin(), freq.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::vector<char32_t> chars;
  chars.reserve(ordered.size());
  for (const auto& [ch, _] : ordered) chars.push_back(ch);
  return {VocabTable(std::move(chars)), LabelSpace(std::move(labels))};
}

std::map<char32_t, std::vector<int>> ObservedClasses(std::span<const Example> train,
                                                     const LabelSpace& labels) {
  std::map<char32_t, std::set<int>> sets;
  for (const auto& ex : train) {
    const int id = labels.Id(ex.label);
    if (id >= 0) sets[ex.target()].insert(id);
  }
  std::map<char32_t, std::vector<int>> out;
  for (auto& [ch, ids] : sets) out.emplace(ch, std::vector<int>(ids.begin(), ids.end()));
  return out;
}

std::optional<std::vector<int>> ModelBundle::DefaultMask(char32_t ch,
                                                         const Lexicon* lexicon) const {
  if (auto it = observed_classes.find(ch); it != observed_classes.end() && !it->second.empty()) {
    return it->second;
  }
  if (lexicon != nullptr) {
    if (const auto* cands = lexicon->Find(ch)) {
      std::vector<int> ids;
      for (const auto& p : *cands) {
        if (int id = labels.Id(p); id >= 0) ids.push_back(id);
      }
      std::sort(ids.begin(), ids.end());
      if (!ids.empty()) return ids;
    }
  }
  return std::nullopt;
}

Prediction ModelBundle::Predict(const Example& example, const std::vector<int>* mask) const {
  const auto ids = vocab.Encode(example.chars);
  return PredictFromLogits(Forward(params, ids, example.target_index), labels, mask);
}

}  // namespace g2pm
