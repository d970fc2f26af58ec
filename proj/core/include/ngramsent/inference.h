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

#ifndef NGRAMSENT_INFERENCE_H_
#define NGRAMSENT_INFERENCE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngramsent/nncore.h"
#include "ngramsent/textproc.h"
#include "ngramsent/vocab.h"

namespace ngramsent {

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainedModel {
  ModelParams params;  // snapshot from the best validation epoch
  uint64_t seed = 0;
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;  // 1-based; 0 if never trained

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

struct Ensemble {
  static constexpr std::size_t kDefaultMembers = 5;

  std::vector<TrainedModel> members;
  NgramVocabulary vocab;
  ModelDims dims;
  TokenizerMode tokenizer = TokenizerMode::kRuleBased;

  // Throws std::invalid_argument if there are no members, a member's dims
  // differ from `dims`, or dims.vocab_size != vocab.size().
  void Validate() const;

  friend bool operator==(const Ensemble&, const Ensemble&) = default;
};

struct Prediction {
  std::array<float, kNumClasses> p{};  // mean of member_ps
  int label = 1;                       // +1 iff p[1] >= p[0]
  std::vector<std::array<float, kNumClasses>> member_ps;
};

// Averages the members' output distributions for an already featurized bag.
Prediction PredictBag(const Ensemble& ensemble, std::span<const NgramId> bag);

// Normalize, tokenize with `mode`, featurize, then PredictBag.
Prediction Predict(const Ensemble& ensemble, std::string_view text,
                   TokenizerMode mode);
// Same, with the tokenizer recorded in the ensemble.
Prediction Predict(const Ensemble& ensemble, std::string_view text);

// Model directory layout:
//   manifest.json   format_version, dims, max_n, capacity, tokenizer,
//                   member_count, seeds, per-member best_epoch and history
//   vocab.tsv       vocabulary in id order
//   member_<i>.bin  little-endian float32 E, W1, b1, W2, b2, row-major
inline constexpr int kModelFormatVersion = 1;

void SaveModel(const Ensemble& ensemble, const std::filesystem::path& dir);
// Throws std::runtime_error describing the first inconsistency found.
Ensemble LoadModel(const std::filesystem::path& dir);

// Raw member tensor file, exposed for format tools and tests.
std::string EncodeMemberTensors(const ModelParams& params);
ModelParams DecodeMemberTensors(std::string_view bytes, const ModelDims& dims,
                                std::size_t member_index);

}  // namespace ngramsent

#endif  // NGRAMSENT_INFERENCE_H_
