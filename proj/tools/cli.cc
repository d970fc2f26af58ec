// Copyright 2026 The ngramsent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "ngramsent/corpus.h"
#include "ngramsent/inference.h"
#include "ngramsent/metrics.h"
#include "ngramsent/probe.h"
#include "ngramsent/textproc.h"
#include "ngramsent/training.h"
#include "ngramsent/vocab.h"

namespace ngramsent::cli {
namespace {

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Flags shared by the commands that read the training corpus.
struct CorpusFlags {
  std::string sentences;
  std::string phrases;
  uint64_t seed = SplitSpec{}.seed;
  std::optional<std::size_t> train_count;
  std::optional<std::size_t> valid_count;
  std::size_t capacity = NgramVocabulary::kDefaultCapacity;

  void Register(CLI::App& cmd) {
    cmd.add_option("sentences", sentences, "Sentence TSV (label, confidence, text)")
        ->required();
    cmd.add_option("phrases", phrases, "Phrase TSV (label, confidence, text)")
        ->required();
    cmd.add_option("--seed", seed, "Shuffle seed for the train/valid split")
        ->capture_default_str();
    cmd.add_option("--train-count", train_count,
                   "Training examples (default 160000 on corpora >= 170000)");
    cmd.add_option("--valid-count", valid_count,
                   "Validation examples (default 10000 on corpora >= 170000)");
    cmd.add_option("--capacity", capacity, "Maximum vocabulary size")
        ->capture_default_str();
  }

  void Validate() const {
    if (capacity < 1) throw std::invalid_argument("--capacity must be >= 1");
    if (train_count.has_value() != valid_count.has_value()) {
      throw std::invalid_argument(
          "--train-count and --valid-count must be given together");
    }
  }

  Split LoadSplit(std::ostream& err) const {
    auto examples = LoadExamples(sentences, ExampleKind::kSentence);
    auto phrase_examples = LoadExamples(phrases, ExampleKind::kPhrase);
    examples.insert(examples.end(),
                    std::make_move_iterator(phrase_examples.begin()),
                    std::make_move_iterator(phrase_examples.end()));
    const auto binary = FilterBinary(examples);
    SplitSpec spec = train_count
                         ? SplitSpec{seed, *train_count, *valid_count}
                         : DefaultSplitSpec(binary.size(), seed);
    err << "loaded " << examples.size() << " examples, " << binary.size()
        << " with binary labels; train=" << spec.train_count
        << " valid=" << spec.valid_count << " ignored="
        << binary.size() - std::min(binary.size(),
                                    spec.train_count + spec.valid_count)
        << '\n';
    return ShuffleSplit(binary, spec);
  }
};

std::vector<TokenSeq> TrainingTokens(const std::vector<Example>& examples) {
  std::vector<TokenSeq> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    out.push_back(Tokenize(Normalize(ex.text), TokenizerMode::kPretokenized));
  }
  return out;
}

std::vector<LabeledBag> Featurized(const std::vector<TokenSeq>& tokens,
                                   const std::vector<Example>& examples,
                                   const NgramVocabulary& vocab) {
  std::vector<LabeledBag> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out.push_back({Featurize(tokens[i], vocab), LabelToClass(examples[i].label)});
  }
  return out;
}

std::vector<uint64_t> ParseSeeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view field = rest.substr(0, comma);
    uint64_t value = 0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
      throw std::invalid_argument("--seeds: '" + std::string(field) +
                                  "' is not an unsigned integer");
    }
    seeds.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (seeds.size() != Ensemble::kDefaultMembers) {
    throw std::invalid_argument("exactly 5 seeds required, got " +
                                std::to_string(seeds.size()));
  }
  return seeds;
}

// Opens `path`, or returns `in` for "-".
class InputSource {
 public:
  InputSource(const std::string& path, std::istream& in) : stream_(&in) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path);
      stream_ = &file_;
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_;
};

int CmdBuildVocab(const CorpusFlags& flags, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  flags.Validate();
  const Split split = flags.LoadSplit(err);
  NgramCounts counts;
  for (const auto& tokens : TrainingTokens(split.train)) {
    CountNgrams(tokens, NgramVocabulary::kDefaultMaxN, counts);
  }
  const auto vocab = VocabularyFromCounts(counts, NgramVocabulary::kDefaultMaxN,
                                          flags.capacity);
  SaveVocabulary(vocab, out_path);
  out << "distinct_ngrams=" << counts.size() << " kept=" << vocab.size()
      << '\n';
  return 0;
}

struct TrainFlags {
  std::optional<std::string> vocab_path;
  bool build_vocab = false;
  std::string seeds = "1,2,3,4,5";
  std::string tokenizer = "rule_based";
  std::size_t embed_dim = ModelDims::kDefaultEmbedDim;
  std::size_t hidden_dim = ModelDims::kDefaultHiddenDim;
  std::size_t batch_size = TrainConfig::kDefaultBatchSize;
  std::size_t max_epochs = TrainConfig::kDefaultMaxEpochs;
  std::size_t patience = TrainConfig::kDefaultPatience;
};

int CmdTrain(const CorpusFlags& corpus, const TrainFlags& flags,
             const std::string& out_dir, std::ostream& out,
             std::ostream& err) {
  corpus.Validate();
  const auto seeds = ParseSeeds(flags.seeds);
  const TokenizerMode mode = ParseTokenizerMode(flags.tokenizer);
  if (flags.vocab_path.has_value() == flags.build_vocab) {
    throw std::invalid_argument("give exactly one of --vocab or --build-vocab");
  }
  TrainConfig config;
  config.batch_size = flags.batch_size;
  config.max_epochs = flags.max_epochs;
  config.patience = flags.patience;
  config.dims.embed_dim = flags.embed_dim;
  config.dims.hidden_dim = flags.hidden_dim;
  config.Validate();

  const Split split = corpus.LoadSplit(err);
  const auto train_tokens = TrainingTokens(split.train);
  const auto valid_tokens = TrainingTokens(split.valid);
  const NgramVocabulary vocab =
      flags.build_vocab
          ? BuildVocabulary(train_tokens, NgramVocabulary::kDefaultMaxN,
                            corpus.capacity)
          : LoadVocabulary(*flags.vocab_path, NgramVocabulary::kDefaultMaxN,
                           corpus.capacity);
  config.dims.vocab_size = vocab.size();

  const auto train = Featurized(train_tokens, split.train, vocab);
  const auto valid = Featurized(valid_tokens, split.valid, vocab);

  std::mutex log_mu;
  auto log = [&](std::size_t member, const EpochRecord& r) {
    std::lock_guard lock(log_mu);
    err << "member=" << member << " epoch=" << r.epoch
        << " loss=" << Fixed6(r.train_loss)
        << " valid_acc=" << Fixed6(r.valid_accuracy) << '\n';
  };
  Ensemble ensemble = TrainEnsemble(train, valid, config, seeds, vocab, log);
  ensemble.tokenizer = mode;
  SaveModel(ensemble, out_dir);

  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const auto& m = ensemble.members[i];
    out << "member=" << i << " seed=" << m.seed
        << " best_epoch=" << m.best_epoch << " valid_acc="
        << Fixed6(m.history.at(m.best_epoch - 1).valid_accuracy) << '\n';
  }
  out << "ensemble valid_acc=" << Fixed6(EnsembleAccuracy(ensemble, valid))
      << '\n';
  return 0;
}

std::optional<TokenizerMode> ModeOverride(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return ParseTokenizerMode(*s);
}

int CmdPredict(const std::string& model_dir, const std::string& input,
               const std::optional<std::string>& tokenizer, std::istream& in,
               std::ostream& out) {
  const auto override_mode = ModeOverride(tokenizer);
  const Ensemble ensemble = LoadModel(model_dir);
  const TokenizerMode mode = override_mode.value_or(ensemble.tokenizer);
  InputSource source(input, in);
  std::string line;
  while (std::getline(source.get(), line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const Prediction pred = Predict(ensemble, line, mode);
    out << pred.label << '\t' << Fixed6(pred.p[0]) << '\t' << Fixed6(pred.p[1])
        << '\n';
  }
  return 0;
}

int CmdEvaluate(const std::string& model_dir, const std::string& input,
                bool pairs, const std::optional<std::string>& tokenizer,
                std::istream& in, std::ostream& out, std::ostream& err) {
  const auto override_mode = ModeOverride(tokenizer);
  const Ensemble ensemble = LoadModel(model_dir);
  const TokenizerMode mode = override_mode.value_or(ensemble.tokenizer);
  InputSource source(input, in);
  auto classify = [&](std::string_view text) {
    return Predict(ensemble, text, mode).label;
  };

  std::vector<int> preds;
  std::vector<int> golds;
  MetricsReport report;
  if (pairs) {
    const auto minimal_pairs = ParsePairs(source.get(), input);
    if (minimal_pairs.empty()) throw std::runtime_error(input + ": no pairs");
    for (const auto& p : minimal_pairs) {
      preds.push_back(classify(p.text_a));
      golds.push_back(p.gold_a);
      preds.push_back(classify(p.text_b));
      golds.push_back(p.gold_b);
    }
    report = F1Report(preds, golds);
    report.broken_rate = BrokenRate(minimal_pairs, classify);
  } else {
    const auto all = ParseExamples(source.get(), ExampleKind::kSentence, input);
    const auto examples = FilterBinary(all);
    if (examples.size() != all.size()) {
      err << "skipped " << all.size() - examples.size()
          << " neutral examples\n";
    }
    if (examples.empty()) throw std::runtime_error(input + ": no examples");
    for (const auto& ex : examples) {
      preds.push_back(classify(ex.text));
      golds.push_back(ex.label);
    }
    report = F1Report(preds, golds);
  }
  out << report.ToJson() << '\n';
  return 0;
}

int CmdProbe(const std::string& model_dir, const std::string& input,
             const std::string& substitutes_path,
             const std::optional<std::string>& tokenizer, std::istream& in,
             std::ostream& out) {
  const auto override_mode = ModeOverride(tokenizer);
  std::vector<std::string> substitutes;
  {
    std::ifstream subs(substitutes_path, std::ios::binary);
    if (!subs) throw std::runtime_error("cannot open " + substitutes_path);
    std::string line;
    while (std::getline(subs, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) substitutes.push_back(line);
    }
  }
  if (substitutes.empty()) {
    throw std::runtime_error(substitutes_path + ": substitute list is empty");
  }
  const Ensemble ensemble = LoadModel(model_dir);
  const TokenizerMode mode = override_mode.value_or(ensemble.tokenizer);
  InputSource source(input, in);
  std::string line;
  while (std::getline(source.get(), line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (const auto& r : OovSubstitutionProbe(ensemble, line, substitutes, mode)) {
      out << FormatProbeResult(r) << '\n';
    }
  }
  return 0;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Bag-of-n-grams sentiment ensemble toolkit", "ngramsent"};
  app.require_subcommand(1);

  CorpusFlags vocab_corpus;
  std::string vocab_out;
  auto* build_vocab = app.add_subcommand(
      "build-vocab", "Build the n-gram vocabulary from the training split");
  vocab_corpus.Register(*build_vocab);
  build_vocab->add_option("out", vocab_out, "Output vocab.tsv")->required();

  CorpusFlags train_corpus;
  TrainFlags train_flags;
  std::string model_out;
  auto* train = app.add_subcommand("train", "Train the five-member ensemble");
  train_corpus.Register(*train);
  train->add_option("out", model_out, "Output model directory")->required();
  train->add_option("--vocab", train_flags.vocab_path, "Existing vocab.tsv");
  train->add_flag("--build-vocab", train_flags.build_vocab,
                  "Build the vocabulary from the training split");
  train->add_option("--seeds", train_flags.seeds,
                    "Five comma-separated member seeds")
      ->capture_default_str();
  train->add_option("--tokenizer", train_flags.tokenizer,
                    "Tokenizer recorded for inference on raw text")
      ->check(CLI::IsMember({"pretokenized", "rule_based"}))
      ->capture_default_str();
  train->add_option("--embed-dim", train_flags.embed_dim)->capture_default_str();
  train->add_option("--hidden-dim", train_flags.hidden_dim)->capture_default_str();
  train->add_option("--batch-size", train_flags.batch_size)->capture_default_str();
  train->add_option("--max-epochs", train_flags.max_epochs)->capture_default_str();
  train->add_option("--patience", train_flags.patience)->capture_default_str();

  std::string model_dir;
  std::string input = "-";
  std::optional<std::string> tokenizer;
  bool pairs = false;
  std::string substitutes;
  auto add_model_io = [&](CLI::App* cmd) {
    cmd->add_option("model", model_dir, "Model directory")->required();
    cmd->add_option("input", input, "Input file or '-' for stdin")
        ->capture_default_str();
    cmd->add_option("--tokenizer", tokenizer,
                    "Override the model's tokenizer mode")
        ->check(CLI::IsMember({"pretokenized", "rule_based"}));
  };
  auto* predict = app.add_subcommand("predict", "Label one text per line");
  add_model_io(predict);
  auto* evaluate =
      app.add_subcommand("evaluate", "Score a labeled TSV or a pair TSV");
  add_model_io(evaluate);
  evaluate->add_flag("--pairs", pairs,
                     "Input is gold_a, text_a, gold_b, text_b pairs");
  auto* probe = app.add_subcommand(
      "probe", "Search single-token substitutions that flip the label");
  add_model_io(probe);
  probe->add_option("--substitutes", substitutes,
                    "Candidate replacement tokens, one per line")
      ->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build_vocab) return CmdBuildVocab(vocab_corpus, vocab_out, out, err);
    if (*train) return CmdTrain(train_corpus, train_flags, model_out, out, err);
    if (*predict) return CmdPredict(model_dir, input, tokenizer, in, out);
    if (*evaluate) {
      return CmdEvaluate(model_dir, input, pairs, tokenizer, in, out, err);
    }
    if (*probe) {
      return CmdProbe(model_dir, input, substitutes, tokenizer, in, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ngramsent::cli
