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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "g2pm/convert.h"
#include "g2pm/corpus.h"
#include "g2pm/corpus_stats.h"
#include "g2pm/error.h"
#include "g2pm/lexicon.h"
#include "g2pm/model.h"
#include "g2pm/model_check.h"
#include "g2pm/serialize.h"
#include "g2pm/train.h"
#include "g2pm/utf8.h"

namespace g2pm {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::vector<std::string> ReadLines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> ReadLines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ReadLines(in);
}

// Writes to `path`, or to stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::kIo, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::optional<Lexicon> LoadLexicon(const std::string& path, bool report) {
  if (path.empty()) return std::nullopt;
  LexiconDiagnostics diag;
  Lexicon lex = Lexicon::Load(path, &diag);
  if (report) std::cerr << diag.Summary() << '\n';
  return lex;
}

const Lexicon* Ptr(const std::optional<Lexicon>& lex) { return lex ? &*lex : nullptr; }

SplitRounding ParseRounding(const std::string& name) {
  return name == "floor" ? SplitRounding::kFloorTrain : SplitRounding::kCeilTrain;
}

std::string Percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * x);
  return buf;
}

struct ModelFlags {
  std::int64_t embed = 64;
  std::int64_t hidden = 64;
  std::int64_t layers = 1;
  std::int64_t fc = 64;
  std::size_t epochs = 20;
  std::size_t batch = 32;
  double lr = 1e-3;

  void Register(CLI::App* app) {
    app->add_option("--embed-dim", embed, "embedding size")->capture_default_str();
    app->add_option("--hidden", hidden, "Bi-LSTM hidden size (both directions)")
        ->capture_default_str();
    app->add_option("--layers", layers, "Bi-LSTM layers")->capture_default_str();
    app->add_option("--fc-dim", fc, "hidden size of the output head")->capture_default_str();
    app->add_option("--epochs", epochs, "training epochs")->capture_default_str();
    app->add_option("--batch-size", batch, "examples per Adam step")->capture_default_str();
    app->add_option("--lr", lr, "Adam learning rate")->capture_default_str();
  }

  TrainConfig ToConfig() const {
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = batch;
    cfg.adam.learning_rate = lr;
    cfg.model = ModelConfig{0, embed, hidden, layers, fc, 0};
    return cfg;
  }
};

std::vector<Example> Pick(const DatasetSplit& split, const std::string& name) {
  if (name == "train") return split.train;
  if (name == "dev") return split.dev;
  return split.test;
}

}  // namespace
}  // namespace g2pm

int main(int argc, char** argv) {
  using namespace g2pm;
  CLI::App app{"g2pm: Mandarin grapheme-to-phoneme conversion with a Bi-LSTM polyphone classifier"};
  app.require_subcommand(1);
  std::string lexicon_path, model_path, out_path, format = "plain", data_dir;
  std::uint64_t seed = 1;
  bool no_mask = false, show_diag = false;

  auto* convert = app.add_subcommand("convert", "convert text (arguments or stdin) to pinyin");
  std::vector<std::string> texts;
  convert->add_option("text", texts, "text to convert; reads stdin when omitted");
  convert->add_option("--model", model_path, "trained model file")->required();
  convert->add_option("--lexicon", lexicon_path, "CC-CEDICT file")->required();
  convert->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"plain", "json-lines"}))
      ->capture_default_str();
  convert->add_flag("--no-mask", no_mask, "classify over all labels instead of the candidates");
  convert->add_flag("--diagnostics", show_diag, "report lexicon and conversion counts on stderr");
  convert->add_option("--out", out_path, "output file (default stdout)");

  ModelFlags mf;
  auto* train = app.add_subcommand("train", "train a model on a CPP split directory");
  train->add_option("--data", data_dir, "directory with {train,dev,test}.{sent,lb}")->required();
  train->add_option("--out", out_path, "model file to write")->required();
  train->add_option("--lexicon", lexicon_path, "CC-CEDICT file, used to flag odd labels");
  train->add_option("--seed", seed, "initialization and shuffling seed")->capture_default_str();
  mf.Register(train);

  auto* grid = app.add_subcommand("grid", "grid search over hidden size and layer count");
  std::vector<std::int64_t> grid_hidden = {16, 32, 64}, grid_layers = {1, 2};
  std::vector<std::uint64_t> grid_seeds = {1, 2, 3, 4, 5};
  grid->add_option("--data", data_dir, "directory with {train,dev,test}.{sent,lb}")->required();
  grid->add_option("--hidden-values", grid_hidden, "hidden sizes")->delimiter(',')
      ->capture_default_str();
  grid->add_option("--layer-values", grid_layers, "layer counts")->delimiter(',')
      ->capture_default_str();
  grid->add_option("--seeds", grid_seeds, "seeds per cell")->delimiter(',')->capture_default_str();
  grid->add_option("--out", out_path, "per-run rows file (default stdout)");
  ModelFlags gf;
  gf.Register(grid);

  auto* eval = app.add_subcommand("eval", "accuracy of a model or the majority baseline");
  std::string which = "test";
  bool majority = false;
  eval->add_option("--data", data_dir, "directory with {train,dev,test}.{sent,lb}")->required();
  eval->add_option("--model", model_path, "trained model file");
  eval->add_option("--lexicon", lexicon_path, "CC-CEDICT file");
  eval->add_option("--split", which, "split to score")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
  eval->add_flag("--majority", majority, "score the per-character majority label instead");
  bool eval_mask = false;
  eval->add_flag("--mask", eval_mask, "restrict model predictions to the candidate mask");

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  std::string raw_path, stats_format = "text";
  stats->add_option("--data", data_dir, "directory with {train,dev,test}.{sent,lb}");
  stats->add_option("--raw", raw_path, "raw text file: polyphone frequency instead");
  stats->add_option("--lexicon", lexicon_path, "CC-CEDICT file");
  stats->add_option("--format", stats_format, "output format")
      ->check(CLI::IsMember({"text", "kv"}))
      ->capture_default_str();
  stats->add_option("--out", out_path, "output file (default stdout)");

  auto* build = app.add_subcommand("build-dataset", "filter raw sentences and mark one polyphone each");
  BuildOptions bo;
  build->add_option("--raw", raw_path, "raw text, one sentence per line")->required();
  build->add_option("--lexicon", lexicon_path, "CC-CEDICT file")->required();
  build->add_option("--out", out_path, "marked sentences (default stdout)");
  build->add_option("--seed", bo.seed, "selection seed")->capture_default_str();
  build->add_option("--min-per-poly", bo.min_per_poly)->capture_default_str();
  build->add_option("--max-per-poly", bo.max_per_poly)->capture_default_str();
  build->add_option("--min-len", bo.min_len)->capture_default_str();
  build->add_option("--max-len", bo.max_len)->capture_default_str();

  auto* split = app.add_subcommand("split", "stratified 8:1:1 split of labeled sentences");
  std::string sent_path, lb_path, rounding = "ceil";
  split->add_option("--sent", sent_path, "marked sentences")->required();
  split->add_option("--lb", lb_path, "labels, one per line")->required();
  split->add_option("--out", out_path, "output directory")->required();
  split->add_option("--seed", seed, "shuffle seed")->capture_default_str();
  split->add_option("--rounding", rounding, "ceil: train=ceil(0.8n); floor: train=floor(0.8n)")
      ->check(CLI::IsMember({"ceil", "floor"}))
      ->capture_default_str();

  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference check of model gradients");
  std::size_t instances = 100;
  gradcheck->add_option("--instances", instances, "random small models")->capture_default_str();
  gradcheck->add_option("--seed", seed)->capture_default_str();

  auto* inspect = app.add_subcommand("inspect", "print model metadata");
  inspect->add_option("model", model_path, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitUsage;
  }

  try {
    if (*convert) {
      const auto lex = LoadLexicon(lexicon_path, show_diag);
      const ModelBundle model = LoadModel(model_path);
      const Converter conv(*lex, &model, ConvertOptions{!no_mask, 50});
      std::vector<std::string> lines = texts;
      if (lines.empty()) lines = ReadLines(std::cin);
      Output out(out_path);
      ConvertDiagnostics total;
      std::size_t number = 0;
      for (const auto& line : lines) {
        ++number;
        ConvertDiagnostics diag;
        const auto tokens = conv.Convert(line, &diag);
        if (diag.long_sentences > 0) {
          std::cerr << "warning: input " << number << ": " << diag.long_sentences
                    << " sentence(s) longer than 50 characters\n";
        }
        total.unknown_chars += diag.unknown_chars;
        total.multi_candidate += diag.multi_candidate;
        total.long_sentences += diag.long_sentences;
        if (format == "plain") {
          out.stream() << FormatPlain(tokens) << '\n';
        } else {
          out.stream() << FormatJsonLines(tokens, &model.labels);
        }
      }
      if (show_diag) {
        std::cerr << "convert: unknown_chars=" << total.unknown_chars
                  << " multi_candidate=" << total.multi_candidate
                  << " long_sentences=" << total.long_sentences << '\n';
      }
    } else if (*train) {
      const auto lex = LoadLexicon(lexicon_path, false);
      LoadReport report;
      const DatasetSplit data = LoadSplit(data_dir, Ptr(lex), &report);
      if (report.flagged > 0) {
        std::cerr << "warning: " << report.flagged << " labels outside the lexicon candidates\n";
      }
      const auto result = Train(data, mf.ToConfig(), seed, [](std::size_t e, double loss, double dev) {
        std::cerr << "epoch " << e + 1 << " loss " << loss << " dev " << Percent(dev) << '\n';
      });
      SaveModel(result.bundle, out_path);
      std::cout << "best_epoch=" << result.history.best_epoch + 1 << '\n'
                << "dev_accuracy=" << Percent(result.history.dev_accuracy[result.history.best_epoch])
                << '\n';
      if (!data.test.empty()) {
        std::cout << "test_accuracy="
                  << Percent(Evaluate(ModelPredictor(result.bundle), data.test).accuracy) << '\n';
      }
    } else if (*grid) {
      const DatasetSplit data = LoadSplit(data_dir);
      TrainConfig cfg = gf.ToConfig();
      cfg.seeds = grid_seeds;
      const auto cells = GridSearch(data, cfg, grid_hidden, grid_layers,
                                    [](const GridCell& c, std::size_t k) {
                                      std::cerr << "H=" << c.hidden << " L=" << c.layers
                                                << " seed=" << c.seeds[k]
                                                << " dev=" << Percent(c.dev_accuracy[k]) << '\n';
                                    });
      Output out(out_path);
      WriteGridRows(cells, out.stream());
      WriteGridSummary(cells, std::cerr);
    } else if (*eval) {
      const auto lex = LoadLexicon(lexicon_path, false);
      const DatasetSplit data = LoadSplit(data_dir);
      const auto examples = Pick(data, which);
      EvalResult result;
      if (majority) {
        const auto table = MajorityTable::Fit(data.train);
        result = Evaluate([&](const Example& e) { return table.Predict(e.target(), Ptr(lex)); },
                          examples);
      } else {
        if (model_path.empty()) throw CLI::RequiredError("--model or --majority");
        const ModelBundle model = LoadModel(model_path);
        result = Evaluate(eval_mask ? MaskedModelPredictor(model, Ptr(lex)) : ModelPredictor(model),
                          examples);
      }
      std::cout << which << "_accuracy=" << Percent(result.accuracy) << " (" << result.correct
                << "/" << result.total << ")\n";
    } else if (*stats) {
      const auto lex = LoadLexicon(lexicon_path, false);
      Output out(out_path);
      if (!raw_path.empty()) {
        if (!lex) throw CLI::RequiredError("--lexicon (with --raw)");
        const auto report = PolyphoneFrequency(ReadLines(raw_path), *lex);
        auto& os = out.stream();
        os << "total_chars=" << report.total_chars << '\n'
           << "unique_chars=" << report.unique_chars << '\n'
           << "polyphone_chars=" << report.polyphone_chars << '\n'
           << "unique_polyphones=" << report.unique_polyphones << '\n';
        for (const auto& [ch, share] : report.ranked) {
          os << "share." << EncodeUtf8(ch) << '=' << share << '\n';
        }
      } else {
        if (data_dir.empty()) throw CLI::RequiredError("--data or --raw");
        const CorpusStats s = ComputeStats(LoadSplit(data_dir, Ptr(lex)), Ptr(lex));
        out.stream() << (stats_format == "kv" ? s.ToKeyValue() : s.ToText());
      }
    } else if (*build) {
      const auto lex = LoadLexicon(lexicon_path, false);
      const auto raw = ReadLines(raw_path);
      const auto built = BuildDataset(raw, *lex, bo);
      Output out(out_path);
      for (const auto& line : built) out.stream() << line << '\n';
      std::cerr << "kept " << built.size() << " of " << raw.size() << " sentences\n";
    } else if (*split) {
      auto examples = LoadExamples(sent_path, lb_path);
      const DatasetSplit parts = StratifiedSplit(std::move(examples), seed, ParseRounding(rounding));
      fs::create_directories(out_path);
      WriteSplit(parts, out_path);
      std::cout << "train=" << parts.train.size() << " dev=" << parts.dev.size()
                << " test=" << parts.test.size() << '\n';
    } else if (*gradcheck) {
      const auto r = CheckModelGradients(instances, seed);
      const bool ok = r.max_relative_error < 1e-4;
      std::cout << "instances=" << r.instances << " coordinates=" << r.coordinates
                << " max_relative_error=" << r.max_relative_error << ' '
                << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? kExitOk : kExitData;
    } else if (*inspect) {
      const auto size = fs::file_size(model_path);
      const ModelBundle m = LoadModel(model_path);
      std::cout << "V=" << m.config.vocab_size << '\n'
                << "c=" << m.config.num_classes << '\n'
                << "L=" << m.config.num_layers << '\n'
                << "H=" << m.config.hidden << '\n'
                << "d=" << m.config.embed_dim << '\n'
                << "fc=" << m.config.fc_dim << '\n'
                << "parameters=" << CountParams(m.config) << '\n'
                << "polyphones=" << m.observed_classes.size() << '\n'
                << "file_bytes=" << size << '\n';
    }
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
