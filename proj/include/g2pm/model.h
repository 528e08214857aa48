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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "g2pm/corpus.h"
#include "g2pm/lexicon.h"
#include "g2pm/nn/layers.h"
#include "g2pm/nn/lstm.h"
#include "g2pm/nn/tensor.h"
#include "g2pm/pinyin.h"
#include "g2pm/rng.h"

namespace g2pm {

using nn::Index;
using nn::Matrix;
using nn::Vector;

// `hidden` is the concatenated Bi-LSTM width; each direction gets hidden / 2.
struct ModelConfig {
  std::int64_t vocab_size = 0;
  std::int64_t embed_dim = 64;
  std::int64_t hidden = 64;
  std::int64_t num_layers = 1;
  std::int64_t fc_dim = 64;
  std::int64_t num_classes = 0;

  std::int64_t direction_hidden() const { return hidden / 2; }
  // Throws kDimensionMismatch on odd `hidden` or any dimension < 1.
  void Validate() const;
  bool operator==(const ModelConfig&) const = default;
};

// Closed-form parameter count for `config`.
std::int64_t CountParams(const ModelConfig& config);

// Characters with reserved ids 0 = PAD and 1 = UNK.
class VocabTable {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;

  VocabTable() = default;
  // `chars` excludes the reserved entries and must be duplicate-free.
  explicit VocabTable(std::vector<char32_t> chars);

  int Id(char32_t ch) const;
  std::vector<int> Encode(std::u32string_view text) const;
  std::size_t size() const { return chars_.size() + 2; }
  const std::vector<char32_t>& chars() const { return chars_; }

 private:
  std::vector<char32_t> chars_;
  std::unordered_map<char32_t, int> index_;
};

// Pinyin classes, sorted ascending by canonical string.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> labels);

  // -1 when absent.
  int Id(const PinyinSyllable& pinyin) const;
  int Id(const std::string& canonical) const;
  const std::string& Label(int id) const { return labels_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

// Vocabulary ordered by training frequency (descending, then code point) and
// the sorted set of training labels. Throws kEmptyDataset.
std::pair<VocabTable, LabelSpace> BuildSpaces(std::span<const Example> train);

template <typename Scalar>
struct ModelParams {
  Matrix<Scalar> embedding;  // V x d
  std::vector<nn::BiLstmLayer<Scalar>> lstm;
  Matrix<Scalar> g1_w;  // fc x H
  Vector<Scalar> g1_b;
  Matrix<Scalar> g2_w;  // c x fc
  Vector<Scalar> g2_b;

  static ModelParams Zeros(const ModelConfig& config) {
    config.Validate();
    ModelParams p;
    const Index hd = config.direction_hidden();
    p.embedding = Matrix<Scalar>::Zero(config.vocab_size, config.embed_dim);
    for (std::int64_t l = 0; l < config.num_layers; ++l) {
      const Index in = l == 0 ? config.embed_dim : config.hidden;
      p.lstm.push_back({nn::LstmDirectionParams<Scalar>::Zero(in, hd),
                        nn::LstmDirectionParams<Scalar>::Zero(in, hd)});
    }
    p.g1_w = Matrix<Scalar>::Zero(config.fc_dim, config.hidden);
    p.g1_b = Vector<Scalar>::Zero(config.fc_dim);
    p.g2_w = Matrix<Scalar>::Zero(config.num_classes, config.fc_dim);
    p.g2_b = Vector<Scalar>::Zero(config.num_classes);
    return p;
  }

  // Embedding ~ U(-0.1, 0.1); matrices ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in));
  // forget-gate bias 1, other biases 0.
  static ModelParams Random(const ModelConfig& config, Rng& rng) {
    ModelParams p = Zeros(config);
    auto fill = [&rng](auto& m, double bound) {
      for (auto& x : nn::Flat(m)) x = static_cast<Scalar>(rng.Uniform(-bound, bound));
    };
    fill(p.embedding, 0.1);
    for (auto& layer : p.lstm) {
      for (auto* dir : {&layer.fwd, &layer.bwd}) {
        fill(dir->w_x, 1.0 / std::sqrt(static_cast<double>(dir->w_x.cols())));
        fill(dir->w_h, 1.0 / std::sqrt(static_cast<double>(dir->w_h.cols())));
        dir->b.segment(dir->hidden(), dir->hidden()).setConstant(Scalar(1));
      }
    }
    fill(p.g1_w, 1.0 / std::sqrt(static_cast<double>(p.g1_w.cols())));
    fill(p.g2_w, 1.0 / std::sqrt(static_cast<double>(p.g2_w.cols())));
    return p;
  }

  // Visits every array in serialization order:
  // embedding, per layer {fwd w_x, w_h, b, bwd w_x, w_h, b}, g1 w, b, g2 w, b.
  template <typename Self, typename Fn>
  static void Visit(Self& self, Fn&& fn) {
    fn(self.embedding);
    for (auto& layer : self.lstm) {
      for (auto* dir : {&layer.fwd, &layer.bwd}) {
        fn(dir->w_x);
        fn(dir->w_h);
        fn(dir->b);
      }
    }
    fn(self.g1_w);
    fn(self.g1_b);
    fn(self.g2_w);
    fn(self.g2_b);
  }

  std::vector<std::span<Scalar>> Arrays() {
    std::vector<std::span<Scalar>> out;
    Visit(*this, [&](auto& m) { out.push_back(nn::Flat(m)); });
    return out;
  }

  std::vector<std::span<const Scalar>> Arrays() const {
    std::vector<std::span<const Scalar>> out;
    Visit(*this, [&](const auto& m) { out.push_back(nn::Flat(m)); });
    return out;
  }

  std::size_t ParameterCount() const {
    std::size_t n = 0;
    for (const auto& a : Arrays()) n += a.size();
    return n;
  }

  template <typename Other>
  ModelParams<Other> Cast() const {
    ModelParams<Other> out;
    out.embedding = embedding.template cast<Other>();
    for (const auto& layer : lstm) {
      auto cast_dir = [](const nn::LstmDirectionParams<Scalar>& d) {
        return nn::LstmDirectionParams<Other>{d.w_x.template cast<Other>(),
                                              d.w_h.template cast<Other>(),
                                              d.b.template cast<Other>()};
      };
      out.lstm.push_back({cast_dir(layer.fwd), cast_dir(layer.bwd)});
    }
    out.g1_w = g1_w.template cast<Other>();
    out.g1_b = g1_b.template cast<Other>();
    out.g2_w = g2_w.template cast<Other>();
    out.g2_b = g2_b.template cast<Other>();
    return out;
  }

  void SetZero() {
    Visit(*this, [](auto& m) { m.setZero(); });
  }
};

// Length of `ids` with trailing PAD removed.
inline std::size_t UnpaddedLength(std::span<const int> ids) {
  std::size_t n = ids.size();
  while (n > 0 && ids[n - 1] == VocabTable::kPad) --n;
  return n;
}

template <typename Scalar>
struct ModelCache {
  const ModelParams<Scalar>* owner = nullptr;
  std::vector<int> ids;
  std::size_t target = 0;
  nn::BiLstmCache<Scalar> lstm;
  Vector<Scalar> h_target;
  Vector<Scalar> z1;  // g1 pre-activation
  Vector<Scalar> a1;  // relu(z1)
};

// Bi-LSTM states for every position of the sentence (trailing PAD ignored).
template <typename Scalar>
std::vector<Vector<Scalar>> Encode(const ModelParams<Scalar>& params, std::span<const int> ids,
                                   nn::BiLstmCache<Scalar>* cache = nullptr) {
  const std::size_t n = UnpaddedLength(ids);
  nn::RequireDims(n > 0, "encode: empty sentence");
  std::vector<Vector<Scalar>> embedded(n);
  for (std::size_t t = 0; t < n; ++t) {
    if (ids[t] < 0 || ids[t] >= params.embedding.rows()) {
      throw Error(ErrorCode::kIndexOutOfRange, "character id outside the embedding table");
    }
    embedded[t] = params.embedding.row(ids[t]).transpose();
  }
  return nn::BiLstmForward<Scalar>(params.lstm, embedded, cache);
}

// logits = g2(relu(g1(h)))
template <typename Scalar>
Vector<Scalar> Classify(const ModelParams<Scalar>& params, const Vector<Scalar>& h) {
  return nn::LinearForward(params.g2_w, params.g2_b,
                           nn::Relu(nn::LinearForward(params.g1_w, params.g1_b, h)));
}

template <typename Scalar>
Vector<Scalar> Forward(const ModelParams<Scalar>& params, std::span<const int> ids,
                       std::size_t target, ModelCache<Scalar>* cache = nullptr) {
  if (target >= UnpaddedLength(ids)) {
    throw Error(ErrorCode::kIndexOutOfRange, "target index outside sentence");
  }
  if (cache == nullptr) return Classify(params, Encode(params, ids)[target]);

  cache->owner = &params;
  cache->ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(UnpaddedLength(ids)));
  cache->target = target;
  auto states = Encode(params, ids, &cache->lstm);
  cache->h_target = std::move(states[target]);
  cache->z1 = nn::LinearForward(params.g1_w, params.g1_b, cache->h_target);
  cache->a1 = nn::Relu(cache->z1);
  return nn::LinearForward(params.g2_w, params.g2_b, cache->a1);
}

// Accumulates d(loss)/d(params) into `grads` given d(loss)/d(logits).
template <typename Scalar>
void Backward(const ModelParams<Scalar>& params, const ModelCache<Scalar>& cache,
              const Vector<Scalar>& d_logits, ModelParams<Scalar>& grads) {
  if (cache.owner != &params || cache.lstm.owner != params.lstm.data()) {
    throw Error(ErrorCode::kStaleCache, "model cache does not belong to these parameters");
  }
  Vector<Scalar> d_a1 = nn::LinearBackward(params.g2_w, cache.a1, d_logits, grads.g2_w, grads.g2_b);
  Vector<Scalar> d_z1 = nn::ReluBackward(cache.z1, d_a1);
  Vector<Scalar> d_h = nn::LinearBackward(params.g1_w, cache.h_target, d_z1, grads.g1_w, grads.g1_b);

  const std::size_t n = cache.lstm.length;
  std::vector<Vector<Scalar>> d_states(n, Vector<Scalar>::Zero(d_h.size()));
  d_states[cache.target] = std::move(d_h);
  auto d_embedded = nn::BiLstmBackward<Scalar>(params.lstm, cache.lstm, d_states, grads.lstm);
  for (std::size_t t = 0; t < n; ++t) {
    grads.embedding.row(cache.ids[t]) += d_embedded[t].transpose();
  }
}

// Cross-entropy loss of one example plus its gradient accumulation.
template <typename Scalar>
Scalar LossAndGradient(const ModelParams<Scalar>& params, std::span<const int> ids,
                       std::size_t target, int gold, ModelParams<Scalar>& grads) {
  ModelCache<Scalar> cache;
  Vector<Scalar> logits = Forward(params, ids, target, &cache);
  auto ce = nn::SoftmaxCrossEntropy(logits, gold);
  Backward(params, cache, ce.grad_logits, grads);
  return ce.loss;
}

struct Prediction {
  int class_id = -1;
  PinyinSyllable pinyin;
  std::vector<double> probs;  // softmax over all classes
};

// Argmax over `logits`, restricted to `mask` when given (lowest id wins ties).
// Throws kEmptyMask for an empty mask.
template <typename Scalar>
Prediction PredictFromLogits(const Vector<Scalar>& logits, const LabelSpace& labels,
                             const std::vector<int>* mask = nullptr) {
  nn::RequireDims(static_cast<std::size_t>(logits.size()) == labels.size(),
                  "predict: logits do not match label space");
  Prediction p;
  auto consider = [&](int k) {
    if (k < 0 || k >= logits.size()) {
      throw Error(ErrorCode::kIndexOutOfRange, "mask class id outside label space");
    }
    if (p.class_id < 0 || logits(k) > logits(p.class_id) ||
        (logits(k) == logits(p.class_id) && k < p.class_id)) {
      p.class_id = k;
    }
  };
  if (mask != nullptr) {
    if (mask->empty()) throw Error(ErrorCode::kEmptyMask, "candidate mask is empty");
    for (int k : *mask) consider(k);
  } else {
    for (int k = 0; k < logits.size(); ++k) consider(k);
  }
  p.pinyin = ParsePinyin(labels.Label(p.class_id));
  const Vector<Scalar> probs = nn::Softmax(logits);
  p.probs.assign(probs.data(), probs.data() + probs.size());
  return p;
}

// Everything needed for inference; what the binary model file stores.
struct ModelBundle {
  ModelConfig config;
  VocabTable vocab;
  LabelSpace labels;
  ModelParams<float> params;
  // Target character -> class ids observed for it in training (sorted).
  std::map<char32_t, std::vector<int>> observed_classes;

  // Default candidate mask: classes observed for `ch` in training; else the
  // lexicon candidates present in the label space; else nullopt (unmasked).
  std::optional<std::vector<int>> DefaultMask(char32_t ch, const Lexicon* lexicon) const;

  Prediction Predict(const Example& example, const std::vector<int>* mask = nullptr) const;
};

std::map<char32_t, std::vector<int>> ObservedClasses(std::span<const Example> train,
                                                     const LabelSpace& labels);

}  // namespace g2pm
