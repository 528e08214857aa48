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

#include "g2pm/train.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "g2pm/error.h"
#include "g2pm/rng.h"
#include "g2pm/utf8.h"

namespace g2pm {

void TrainConfig::Validate() const {
  if (batch_size < 1) throw Error(ErrorCode::kDimensionMismatch, "batch size must be >= 1");
  if (epochs < 1) throw Error(ErrorCode::kDimensionMismatch, "epochs must be >= 1");
  if (seeds.empty()) throw Error(ErrorCode::kEmptyDataset, "no seeds given");
}

namespace {

struct Encoded {
  std::vector<int> ids;
  std::size_t target = 0;
  int gold = -1;  // -1 when the label is outside the training label space
};

std::vector<Encoded> EncodeAll(std::span<const Example> examples, const VocabTable& vocab,
                               const LabelSpace& labels) {
  std::vector<Encoded> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    out.push_back({vocab.Encode(ex.chars), ex.target_index, labels.Id(ex.label)});
  }
  return out;
}

int Argmax(const Vector<double>& logits) {
  Index best = 0;
  for (Index k = 1; k < logits.size(); ++k) {
    if (logits(k) > logits(best)) best = k;
  }
  return static_cast<int>(best);
}

double Accuracy(const ModelParams<double>& params, const std::vector<Encoded>& data) {
  std::size_t correct = 0;
  for (const auto& ex : data) {
    if (ex.gold >= 0 && Argmax(Forward(params, ex.ids, ex.target)) == ex.gold) ++correct;
  }
  return data.empty() ? 0.0 : static_cast<double>(correct) / data.size();
}

}  // namespace

TrainResult Train(const DatasetSplit& split, const TrainConfig& config, std::uint64_t seed,
                  const EpochCallback& on_epoch) {
  config.Validate();
  if (split.train.empty()) throw Error(ErrorCode::kEmptyDataset, "empty training split");
  if (split.dev.empty()) throw Error(ErrorCode::kEmptyDataset, "empty development split");

  auto [vocab, labels] = BuildSpaces(split.train);
  ModelConfig mc = config.model;
  mc.vocab_size = static_cast<std::int64_t>(vocab.size());
  mc.num_classes = static_cast<std::int64_t>(labels.size());
  mc.Validate();

  Rng init_rng(MixSeed(seed, 1));
  Rng order_rng(MixSeed(seed, 2));
  auto params = ModelParams<double>::Random(mc, init_rng);
  auto grads = ModelParams<double>::Zeros(mc);
  nn::AdamState<double> adam;
  adam.options = config.adam;

  const auto train = EncodeAll(split.train, vocab, labels);
  const auto dev = EncodeAll(split.dev, vocab, labels);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  ModelParams<double> best = params;
  double best_dev = -1.0;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) order_rng.Shuffle(std::span(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      grads.SetZero();
      for (std::size_t k = start; k < end; ++k) {
        const auto& ex = train[order[k]];
        double loss = 0.0;
        try {
          loss = LossAndGradient(params, ex.ids, ex.target, ex.gold, grads);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNumericalFault) throw;
          throw Error(ErrorCode::kNumericalFault,
                      "training diverged at epoch " + std::to_string(epoch + 1) + ", example " +
                          std::to_string(order[k]) + ": " + e.what());
        }
        loss_sum += loss;
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      ModelParams<double>::Visit(grads, [scale](auto& m) { m *= scale; });
      auto param_arrays = params.Arrays();
      auto grad_arrays = std::as_const(grads).Arrays();
      nn::AdamStep<double>(param_arrays, grad_arrays, adam);
    }
    const double mean_loss = loss_sum / static_cast<double>(train.size());
    if (!std::isfinite(mean_loss)) {
      throw Error(ErrorCode::kNumericalFault,
                  "non-finite epoch loss at epoch " + std::to_string(epoch + 1));
    }
    const double dev_acc = Accuracy(params, dev);
    result.history.train_loss.push_back(mean_loss);
    result.history.dev_accuracy.push_back(dev_acc);
    if (dev_acc > best_dev) {
      best_dev = dev_acc;
      best = params;
      result.history.best_epoch = epoch;
    }
    if (on_epoch) on_epoch(epoch, mean_loss, dev_acc);
  }

  result.bundle.config = mc;
  result.bundle.observed_classes = ObservedClasses(split.train, labels);
  result.bundle.vocab = std::move(vocab);
  result.bundle.labels = std::move(labels);
  result.bundle.params = best.Cast<float>();
  return result;
}

EvalResult Evaluate(const Predictor& predictor, std::span<const Example> examples) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyDataset, "nothing to evaluate");
  EvalResult r;
  for (const auto& ex : examples) {
    const bool ok = predictor(ex) == ex.label;
    auto& cell = r.per_polyphone[ex.target()];
    ++cell.second;
    ++r.total;
    if (ok) {
      ++cell.first;
      ++r.correct;
    }
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  return r;
}

Predictor ModelPredictor(const ModelBundle& bundle) {
  return [&bundle](const Example& ex) { return bundle.Predict(ex).pinyin; };
}

Predictor MaskedModelPredictor(const ModelBundle& bundle, const Lexicon* lexicon) {
  return [&bundle, lexicon](const Example& ex) {
    const auto mask = bundle.DefaultMask(ex.target(), lexicon);
    return bundle.Predict(ex, mask ? &*mask : nullptr).pinyin;
  };
}

MajorityTable MajorityTable::Fit(std::span<const Example> train) {
  MajorityTable table;
  for (const auto& ex : train) ++table.counts_[ex.target()][ex.label.Render()];
  for (const auto& [ch, counts] : table.counts_) {
    // std::map iterates canonical strings ascending, so the first maximum wins ties.
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [label, n] : counts) {
      if (n > best_count) {
        best = &label;
        best_count = n;
      }
    }
    table.chosen_.emplace(ch, ParsePinyin(*best));
  }
  return table;
}

PinyinSyllable MajorityTable::Predict(char32_t ch, const Lexicon* lexicon) const {
  if (auto it = chosen_.find(ch); it != chosen_.end()) return it->second;
  if (lexicon != nullptr && lexicon->Contains(ch)) return lexicon->Candidates(ch).front();
  throw Error(ErrorCode::kUnknownCharacter,
              "'" + EncodeUtf8(ch) + "' unseen in training and absent from lexicon");
}

std::pair<double, double> MeanStd(std::span<const double> values) {
  if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

std::vector<GridCell> GridSearch(const DatasetSplit& split, const TrainConfig& base,
                                 std::span<const std::int64_t> hidden_values,
                                 std::span<const std::int64_t> layer_values,
                                 const std::function<void(const GridCell&, std::size_t)>& on_run) {
  base.Validate();
  std::vector<GridCell> cells;
  for (std::int64_t hidden : hidden_values) {
    for (std::int64_t layers : layer_values) {
      GridCell cell;
      cell.hidden = hidden;
      cell.layers = layers;
      TrainConfig cfg = base;
      cfg.model.hidden = hidden;
      cfg.model.num_layers = layers;
      for (std::uint64_t seed : base.seeds) {
        auto run = Train(split, cfg, seed);
        cell.seeds.push_back(seed);
        cell.dev_accuracy.push_back(run.history.dev_accuracy[run.history.best_epoch]);
        cell.test_accuracy.push_back(
            split.test.empty() ? std::numeric_limits<double>::quiet_NaN()
                               : Evaluate(ModelPredictor(run.bundle), split.test).accuracy);
        if (on_run) on_run(cell, cell.seeds.size() - 1);
      }
      std::tie(cell.mean_dev, cell.std_dev) = MeanStd(cell.dev_accuracy);
      cell.single_seed = cell.dev_accuracy.size() < 2;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void WriteGridRows(const std::vector<GridCell>& cells, std::ostream& out) {
  out << "hidden\tlayers\tseed\tdev_accuracy\ttest_accuracy\n";
  out << std::setprecision(6) << std::fixed;
  for (const auto& cell : cells) {
    for (std::size_t k = 0; k < cell.seeds.size(); ++k) {
      out << cell.hidden << '\t' << cell.layers << '\t' << cell.seeds[k] << '\t'
          << cell.dev_accuracy[k] << '\t' << cell.test_accuracy[k] << '\n';
    }
  }
}

void WriteGridSummary(const std::vector<GridCell>& cells, std::ostream& out) {
  std::vector<std::int64_t> hs, ls;
  for (const auto& c : cells) {
    if (std::find(hs.begin(), hs.end(), c.hidden) == hs.end()) hs.push_back(c.hidden);
    if (std::find(ls.begin(), ls.end(), c.layers) == ls.end()) ls.push_back(c.layers);
  }
  out << "H \\ L";
  for (auto l : ls) out << "\t" << l;
  out << '\n' << std::fixed << std::setprecision(2);
  for (auto h : hs) {
    out << h;
    for (auto l : ls) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const GridCell& c) { return c.hidden == h && c.layers == l; });
      out << '\t';
      if (it == cells.end()) {
        out << '-';
        continue;
      }
      out << 100.0 * it->mean_dev << " ± " << 100.0 * it->std_dev;
      if (it->single_seed) out << " (1 seed)";
    }
    out << '\n';
  }
}

}  // namespace g2pm
