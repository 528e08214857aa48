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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "fd_oracle.h"
#include "g2pm/error.h"
#include "g2pm/model_check.h"

namespace g2pm {
namespace {

using testing::MaxFdError;

template <typename Fn>
void ExpectCode(ErrorCode code, Fn&& fn) {
  try {
    fn();
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

ModelConfig RandomConfig(Rng& rng) {
  ModelConfig c;
  c.vocab_size = 2 + static_cast<std::int64_t>(rng.Below(60));
  c.embed_dim = 1 + static_cast<std::int64_t>(rng.Below(12));
  c.hidden = 2 * (1 + static_cast<std::int64_t>(rng.Below(8)));
  c.num_layers = 1 + static_cast<std::int64_t>(rng.Below(3));
  c.fc_dim = 1 + static_cast<std::int64_t>(rng.Below(16));
  c.num_classes = 1 + static_cast<std::int64_t>(rng.Below(10));
  return c;
}

TEST(CountParams, SmallConfig) {
  const ModelConfig c{10, 4, 4, 1, 8, 3};
  EXPECT_EQ(CountParams(c), 219);
  EXPECT_EQ(ModelParams<double>::Zeros(c).ParameterCount(), 219u);
  ModelConfig doubled = c;
  doubled.vocab_size = 20;
  EXPECT_EQ(CountParams(doubled) - CountParams(c), 40);
}

TEST(CountParams, MatchesEnumerationOnRandomConfigs) {
  Rng rng(1);
  for (int n = 0; n < 1000; ++n) {
    const ModelConfig c = RandomConfig(rng);
    EXPECT_EQ(static_cast<std::int64_t>(ModelParams<double>::Zeros(c).ParameterCount()),
              CountParams(c));
  }
}

TEST(ModelConfig, Validation) {
  ExpectCode(ErrorCode::kDimensionMismatch, [] { ModelConfig{10, 4, 3, 1, 8, 3}.Validate(); });
  ExpectCode(ErrorCode::kDimensionMismatch, [] { ModelConfig{10, 4, 4, 0, 8, 3}.Validate(); });
  ExpectCode(ErrorCode::kDimensionMismatch, [] { ModelConfig{10, 0, 4, 1, 8, 3}.Validate(); });
  EXPECT_NO_THROW((ModelConfig{10, 4, 4, 1, 8, 3}.Validate()));
}

TEST(ModelParams, RandomInitialisationRanges) {
  Rng rng(2);
  const ModelConfig c{30, 16, 8, 2, 12, 5};
  const auto p = ModelParams<double>::Random(c, rng);
  EXPECT_LE(p.embedding.cwiseAbs().maxCoeff(), 0.1);
  EXPECT_LE(p.lstm[0].fwd.w_x.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(16.0));
  EXPECT_LE(p.lstm[1].bwd.w_x.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(8.0));
  EXPECT_LE(p.lstm[0].fwd.w_h.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(4.0));
  EXPECT_LE(p.g1_w.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(8.0));
  EXPECT_LE(p.g2_w.cwiseAbs().maxCoeff(), 1.0 / std::sqrt(12.0));
  for (const auto& layer : p.lstm) {
    for (const auto* dir : {&layer.fwd, &layer.bwd}) {
      EXPECT_EQ(dir->b.segment(0, 4), Vector<double>::Zero(4));
      EXPECT_EQ(dir->b.segment(4, 4), Vector<double>::Ones(4));
      EXPECT_EQ(dir->b.segment(8, 8), Vector<double>::Zero(8));
    }
  }
  EXPECT_EQ(p.g1_b, Vector<double>::Zero(12));
  EXPECT_EQ(p.g2_b, Vector<double>::Zero(5));
}

double Sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct ScalarCell {
  double wx[4], wh[4], b[4];

  void Step(double x, double& h, double& c) const {
    const double i = Sig(wx[0] * x + wh[0] * h + b[0]);
    const double f = Sig(wx[1] * x + wh[1] * h + b[1]);
    const double g = std::tanh(wx[2] * x + wh[2] * h + b[2]);
    const double o = Sig(wx[3] * x + wh[3] * h + b[3]);
    c = f * c + i * g;
    h = o * std::tanh(c);
  }
};

TEST(Forward, HandBuiltTwoStepInstance) {
  const ModelConfig config{4, 1, 2, 1, 2, 2};
  auto p = ModelParams<double>::Zeros(config);
  p.embedding << 0, 0, 0, 0;
  p.embedding(2, 0) = 0.7;
  p.embedding(3, 0) = -0.4;
  const ScalarCell fwd{{0.5, -0.3, 0.8, 0.2}, {0.1, 0.4, -0.6, 0.3}, {0.0, 1.0, 0.1, -0.2}};
  const ScalarCell bwd{{-0.7, 0.2, 0.5, 0.9}, {0.3, -0.1, 0.2, 0.6}, {0.05, 1.0, -0.3, 0.1}};
  for (int k = 0; k < 4; ++k) {
    p.lstm[0].fwd.w_x(k, 0) = fwd.wx[k];
    p.lstm[0].fwd.w_h(k, 0) = fwd.wh[k];
    p.lstm[0].fwd.b(k) = fwd.b[k];
    p.lstm[0].bwd.w_x(k, 0) = bwd.wx[k];
    p.lstm[0].bwd.w_h(k, 0) = bwd.wh[k];
    p.lstm[0].bwd.b(k) = bwd.b[k];
  }
  p.g1_w << 1.0, -0.5, 0.3, 0.8;
  p.g1_b << 0.1, -0.2;
  p.g2_w << 0.6, -1.1, -0.4, 0.9;
  p.g2_b << 0.05, -0.05;

  const double e[2] = {0.7, -0.4};
  double hf[2], hb[2];
  {
    double h = 0, c = 0;
    for (int t = 0; t < 2; ++t) {
      fwd.Step(e[t], h, c);
      hf[t] = h;
    }
    h = 0;
    c = 0;
    for (int t = 1; t >= 0; --t) {
      bwd.Step(e[t], h, c);
      hb[t] = h;
    }
  }
  const std::vector<int> ids = {2, 3};
  for (std::size_t j = 0; j < 2; ++j) {
    const double z0 = 1.0 * hf[j] - 0.5 * hb[j] + 0.1;
    const double z1 = 0.3 * hf[j] + 0.8 * hb[j] - 0.2;
    const double a0 = std::max(0.0, z0), a1 = std::max(0.0, z1);
    const double l0 = 0.6 * a0 - 1.1 * a1 + 0.05;
    const double l1 = -0.4 * a0 + 0.9 * a1 - 0.05;
    const auto logits = Forward(p, ids, j);
    EXPECT_NEAR(logits(0), l0, 1e-15) << j;
    EXPECT_NEAR(logits(1), l1, 1e-15) << j;
  }
  EXPECT_NE(Forward(p, ids, 0), Forward(p, ids, 1));
}

TEST(Forward, SingleCharacterZeroWeightsGivesOutputBias) {
  const ModelConfig config{5, 3, 4, 2, 6, 3};
  auto p = ModelParams<double>::Zeros(config);
  p.g2_b << 0.25, -1.5, 3.0;
  const std::vector<int> ids = {3};
  EXPECT_EQ(Forward(p, ids, 0), p.g2_b);
}

TEST(Forward, TrailingPadIsIgnored) {
  Rng rng(3);
  for (int n = 0; n < 50; ++n) {
    ModelConfig c = RandomConfig(rng);
    c.vocab_size = std::max<std::int64_t>(c.vocab_size, 3);
    const auto p = ModelParams<double>::Random(c, rng);
    std::vector<int> ids;
    const std::size_t len = 1 + rng.Below(8);
    for (std::size_t t = 0; t < len; ++t) {
      ids.push_back(1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(c.vocab_size - 1))));
    }
    const std::size_t target = rng.Below(len);
    const auto plain = Forward(p, ids, target);
    std::vector<int> padded = ids;
    padded.insert(padded.end(), 1 + rng.Below(5), VocabTable::kPad);
    EXPECT_EQ(Forward(p, padded, target), plain);
  }
}

TEST(Forward, Errors) {
  const ModelConfig config{5, 3, 4, 1, 6, 3};
  const auto p = ModelParams<double>::Zeros(config);
  const std::vector<int> ids = {2, 3, 0};
  ExpectCode(ErrorCode::kIndexOutOfRange, [&] { Forward(p, ids, 2); });
  const std::vector<int> bad = {2, 9};
  ExpectCode(ErrorCode::kIndexOutOfRange, [&] { Forward(p, bad, 0); });
}

TEST(Backward, FullModelMatchesFd) {
  Rng rng(4);
  for (int n = 0; n < 10; ++n) {
    const ModelConfig c{10, 4, 4, 1 + static_cast<std::int64_t>(n % 2), 5, 3};
    auto p = ModelParams<double>::Random(c, rng);
    for (auto& a : p.Arrays()) {
      for (auto& x : a) x += rng.Uniform(-0.3, 0.3);
    }
    std::vector<int> ids;
    for (int t = 0; t < 6; ++t) ids.push_back(1 + static_cast<int>(rng.Below(9)));
    const std::size_t target = rng.Below(6);
    const int gold = static_cast<int>(rng.Below(3));
    auto grads = ModelParams<double>::Zeros(c);
    LossAndGradient(p, ids, target, gold, grads);
    auto loss = [&] { return nn::SoftmaxCrossEntropy(Forward(p, ids, target), gold).loss; };
    auto params = p.Arrays();
    const auto analytic = std::as_const(grads).Arrays();
    for (std::size_t a = 0; a < params.size(); ++a) {
      EXPECT_LT(MaxFdError(loss, params[a], analytic[a], 1e-5), 1e-4) << "array " << a;
    }
  }
}

TEST(Backward, StaleCacheRejected) {
  Rng rng(5);
  const ModelConfig c{10, 4, 4, 1, 5, 3};
  const auto p = ModelParams<double>::Random(c, rng);
  const auto q = p;
  ModelCache<double> cache;
  const std::vector<int> ids = {2, 3, 4};
  Forward(p, ids, 1, &cache);
  auto grads = ModelParams<double>::Zeros(c);
  ExpectCode(ErrorCode::kStaleCache,
             [&] { Backward(q, cache, Vector<double>(Vector<double>::Ones(3)), grads); });
}

TEST(Spaces, BuildFromExamples) {
  std::vector<Example> train = {ParseExample("目▁的▁", "di4"), ParseExample("我▁的▁书", "de5"),
                                ParseExample("你▁的▁", "de5")};
  const auto [vocab, labels] = BuildSpaces(train);
  EXPECT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels.labels(), (std::vector<std::string>{"de5", "di4"}));
  EXPECT_EQ(labels.Id(ParsePinyin("di4")), 1);
  EXPECT_EQ(labels.Id("zzz9"), -1);
  // frequency descending, then code point
  EXPECT_EQ(vocab.chars().front(), U'的');
  EXPECT_EQ(vocab.size(), 2u + 5u);
  EXPECT_EQ(vocab.Id(U'的'), 2);
  EXPECT_EQ(vocab.Id(U'猫'), VocabTable::kUnk);
  const auto& c = vocab.chars();
  for (std::size_t k = 2; k < c.size(); ++k) EXPECT_LT(c[k - 1], c[k]);
  ExpectCode(ErrorCode::kEmptyDataset, [] { BuildSpaces(std::vector<Example>{}); });
}

LabelSpace FiveLabels() { return LabelSpace({"a1", "b2", "c3", "d4", "e5"}); }

TEST(Predict, MaskSemantics) {
  const LabelSpace labels = FiveLabels();
  Rng rng(6);
  for (int n = 0; n < 200; ++n) {
    Vector<double> logits(5);
    for (auto& x : nn::Flat(logits)) x = rng.Uniform(-3, 3);
    const auto free = PredictFromLogits(logits, labels);
    Index best;
    logits.maxCoeff(&best);
    EXPECT_EQ(free.class_id, best);

    const int k = static_cast<int>(rng.Below(5));
    const std::vector<int> single = {k};
    EXPECT_EQ(PredictFromLogits(logits, labels, &single).class_id, k);

    const std::vector<int> full = {0, 1, 2, 3, 4};
    EXPECT_EQ(PredictFromLogits(logits, labels, &full).class_id, free.class_id);

    const std::vector<int> with_best = {static_cast<int>(best), k};
    EXPECT_EQ(PredictFromLogits(logits, labels, &with_best).class_id, free.class_id);

    const Vector<float> lf = logits.cast<float>();
    double s = 0;
    for (double q : PredictFromLogits(lf, labels).probs) s += q;
    EXPECT_NEAR(s, 1.0, 1e-6);
  }
  const std::vector<int> empty;
  ExpectCode(ErrorCode::kEmptyMask,
             [&] { PredictFromLogits<double>(Vector<double>::Zero(5), labels, &empty); });
  const std::vector<int> outside = {7};
  ExpectCode(ErrorCode::kIndexOutOfRange,
             [&] { PredictFromLogits<double>(Vector<double>::Zero(5), labels, &outside); });
}

TEST(Predict, TiesGoToLowestId) {
  const LabelSpace labels = FiveLabels();
  const Vector<double> logits = (Vector<double>(5) << 0, 2, 1, 2, 2).finished();
  EXPECT_EQ(PredictFromLogits(logits, labels).class_id, 1);
  const std::vector<int> mask = {4, 3};
  EXPECT_EQ(PredictFromLogits(logits, labels, &mask).class_id, 3);
  EXPECT_EQ(PredictFromLogits(logits, labels).pinyin.Render(), "b2");
}

TEST(ModelBundle, DefaultMaskPrecedence) {
  ModelBundle bundle;
  bundle.labels = LabelSpace({"de5", "di4", "xing2", "hang2"});
  bundle.observed_classes[U'的'] = {0};
  std::istringstream in("的 的 [de5] /a/\n的 的 [di4] /b/\n行 行 [xing2] /a/\n行 行 [hang2] /b/\n"
                        "行 行 [heng2] /c/\n乐 乐 [le4] /a/\n乐 乐 [yue4] /b/\n");
  const Lexicon lex = Lexicon::Parse(in);
  EXPECT_EQ(*bundle.DefaultMask(U'的', &lex), (std::vector<int>{0}));
  const int hang = bundle.labels.Id("hang2"), xing = bundle.labels.Id("xing2");
  std::vector<int> expected = {hang, xing};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(*bundle.DefaultMask(U'行', &lex), expected);
  EXPECT_FALSE(bundle.DefaultMask(U'乐', &lex).has_value());
  EXPECT_FALSE(bundle.DefaultMask(U'行', nullptr).has_value());
}

TEST(ModelBundle, ObservedClasses) {
  const LabelSpace labels({"de5", "di4", "xing2"});
  std::vector<Example> train = {ParseExample("目▁的▁", "di4"), ParseExample("我▁的▁", "de5"),
                                ParseExample("▁行▁", "xing2"), ParseExample("我▁的▁", "de5")};
  const auto observed = ObservedClasses(train, labels);
  EXPECT_EQ(observed.at(U'的'), (std::vector<int>{0, 1}));
  EXPECT_EQ(observed.at(U'行'), (std::vector<int>{2}));
}

TEST(RandomSmallConfig, StaysInsideTheCheckedRange) {
  Rng rng(12);
  for (int n = 0; n < 500; ++n) {
    const ModelConfig c = RandomSmallConfig(rng);
    EXPECT_NO_THROW(c.Validate());
    EXPECT_LE(c.vocab_size, 20);
    EXPECT_LE(c.embed_dim, 8);
    EXPECT_TRUE(c.hidden == 2 || c.hidden == 4 || c.hidden == 8);
    EXPECT_LE(c.num_layers, 2);
    EXPECT_LE(c.num_classes, 5);
  }
}

TEST(CheckModelGradients, AgreesWithFiniteDifferences) {
  const auto r = CheckModelGradients(10, 3);
  EXPECT_EQ(r.instances, 10u);
  EXPECT_GT(r.coordinates, 0u);
  EXPECT_LT(r.max_relative_error, 1e-4);
}

}  // namespace
}  // namespace g2pm
