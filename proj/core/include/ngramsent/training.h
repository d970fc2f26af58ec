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

#ifndef NGRAMSENT_TRAINING_H_
#define NGRAMSENT_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ngramsent/inference.h"
#include "ngramsent/nncore.h"
#include "ngramsent/optim.h"
#include "ngramsent/vocab.h"

namespace ngramsent {

struct LabeledBag {
  FeatureBag bag;
  int cls = 0;  // 0 for label -1, 1 for label +1
};

struct TrainConfig {
  static constexpr std::size_t kDefaultBatchSize = 64;
  static constexpr std::size_t kDefaultMaxEpochs = 100;
  static constexpr std::size_t kDefaultPatience = 3;

  std::size_t batch_size = kDefaultBatchSize;
  std::size_t max_epochs = kDefaultMaxEpochs;
  std::size_t patience = kDefaultPatience;
  uint64_t seed = 1;
  AdamHyper hyper;
  ModelDims dims;  // vocab_size must match the featurized data's vocabulary

  void Validate() const;
};

// Called after every epoch with (member index, record).
using EpochCallback = std::function<void(std::size_t, const EpochRecord&)>;

// Tracks the best validation accuracy. A strictly higher accuracy resets the
// patience counter; anything else uses up one unit of patience.
class EarlyStopper {
 public:
  explicit EarlyStopper(std::size_t patience) : patience_(patience) {}

  // Returns true if `accuracy` is a new best.
  bool Observe(std::size_t epoch, double accuracy);
  bool ShouldStop() const { return stale_epochs_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_accuracy() const { return best_accuracy_; }

 private:
  std::size_t patience_;
  std::size_t stale_epochs_ = 0;
  std::size_t best_epoch_ = 0;
  double best_accuracy_ = -1.0;
};

// Visiting order of `n` training examples in epoch `epoch` (1-based):
// identity permutation shuffled by splitmix64(DeriveSeed(seed, epoch)).
std::vector<std::size_t> EpochOrder(uint64_t seed, std::size_t epoch,
                                    std::size_t n);

// Fraction of `data` whose argmax class (tie -> 1) equals the gold class.
double BagAccuracy(const ModelParams& params, std::span<const LabeledBag> data);

// Mini-batch Adam with per-epoch validation and early stopping. Each epoch
// reshuffles the training set with splitmix64(DeriveSeed(seed, epoch)) and
// averages per-example gradients within a batch. Returns the best-epoch
// snapshot. Throws std::invalid_argument on empty splits or bad config.
TrainedModel TrainModel(std::span<const LabeledBag> train,
                        std::span<const LabeledBag> valid,
                        const TrainConfig& config,
                        const EpochCallback& on_epoch = {},
                        std::size_t member_index = 0);

// Trains one member per seed (config.seed is ignored) and assembles them
// with `vocab`. Members may train on up to `threads` threads (0 = hardware
// concurrency); the result is identical for any thread count. Throws
// std::invalid_argument on duplicate seeds.
Ensemble TrainEnsemble(std::span<const LabeledBag> train,
                       std::span<const LabeledBag> valid,
                       const TrainConfig& config,
                       std::span<const uint64_t> seeds,
                       const NgramVocabulary& vocab,
                       const EpochCallback& on_epoch = {},
                       std::size_t threads = 0);

// Ensemble accuracy over featurized data.
double EnsembleAccuracy(const Ensemble& ensemble,
                        std::span<const LabeledBag> data);

}  // namespace ngramsent

#endif  // NGRAMSENT_TRAINING_H_
