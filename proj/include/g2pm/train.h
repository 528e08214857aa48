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

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "g2pm/corpus.h"
#include "g2pm/lexicon.h"
#include "g2pm/model.h"
#include "g2pm/nn/adam.h"

namespace g2pm {

struct TrainConfig {
  std::size_t batch_size = 32;
  std::size_t epochs = 20;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  nn::AdamOptions adam;
  // vocab_size and num_classes are filled from the training split.
  ModelConfig model;
  bool shuffle = true;

  void Validate() const;
};

struct RunHistory {
  std::vector<double> train_loss;    // mean per-example loss of each epoch
  std::vector<double> dev_accuracy;  // unmasked argmax
  std::size_t best_epoch = 0;        // earliest epoch with maximal dev accuracy
};

struct TrainResult {
  ModelBundle bundle;  // parameters from the best dev epoch, rounded to float
  RunHistory history;
};

// Called after every epoch: (epoch index, mean loss, dev accuracy).
using EpochCallback = std::function<void(std::size_t, double, double)>;

// Mini-batch Adam on the cross-entropy of the target position. Each sequence
// runs at its own length; gradients are averaged over the batch. Throws
// kEmptyDataset and kNumericalFault (non-finite loss).
TrainResult Train(const DatasetSplit& split, const TrainConfig& config, std::uint64_t seed,
                  const EpochCallback& on_epoch = nullptr);

struct EvalResult {
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  // target character -> (correct, total)
  std::map<char32_t, std::pair<std::size_t, std::size_t>> per_polyphone;
};

using Predictor = std::function<PinyinSyllable(const Example&)>;

// Fraction of examples whose predicted canonical pinyin equals the gold label.
// Throws kEmptyDataset.
EvalResult Evaluate(const Predictor& predictor, std::span<const Example> examples);

// Unmasked (plain argmax) and default-masked predictors over a bundle.
Predictor ModelPredictor(const ModelBundle& bundle);
Predictor MaskedModelPredictor(const ModelBundle& bundle, const Lexicon* lexicon);

// Context-free baseline: the most frequent training label per target
// character, ties to the canonically smallest label.
class MajorityTable {
 public:
  static MajorityTable Fit(std::span<const Example> train);

  // Falls back to the first lexicon candidate for unseen characters; throws
  // kUnknownCharacter when that is impossible.
  PinyinSyllable Predict(char32_t ch, const Lexicon* lexicon = nullptr) const;

  const std::map<char32_t, std::map<std::string, std::size_t>>& counts() const { return counts_; }

 private:
  std::map<char32_t, std::map<std::string, std::size_t>> counts_;
  std::map<char32_t, PinyinSyllable> chosen_;
};

struct GridCell {
  std::int64_t hidden = 0;
  std::int64_t layers = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> dev_accuracy;  // best-epoch dev accuracy per seed
  std::vector<double> test_accuracy;
  double mean_dev = 0.0;
  double std_dev = 0.0;    // sample standard deviation; 0 for one seed
  bool single_seed = false;
};

// Runs Train for every (hidden, layers, seed) combination.
std::vector<GridCell> GridSearch(const DatasetSplit& split, const TrainConfig& base,
                                 std::span<const std::int64_t> hidden_values,
                                 std::span<const std::int64_t> layer_values,
                                 const std::function<void(const GridCell&, std::size_t)>& on_run =
                                     nullptr);

// Sample mean and standard deviation (n - 1 denominator; 0 when n < 2).
std::pair<double, double> MeanStd(std::span<const double> values);

// Rows "hidden<TAB>layers<TAB>seed<TAB>dev<TAB>test".
void WriteGridRows(const std::vector<GridCell>& cells, std::ostream& out);
// H x L table of "mean ± std" dev accuracy in percent.
void WriteGridSummary(const std::vector<GridCell>& cells, std::ostream& out);

}  // namespace g2pm
