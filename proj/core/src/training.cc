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

#include "ngramsent/training.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "ngramsent/rng.h"

namespace ngramsent {

void TrainConfig::Validate() const {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (max_epochs == 0) throw std::invalid_argument("max_epochs must be >= 1");
  if (patience == 0) throw std::invalid_argument("patience must be >= 1");
  if (dims.embed_dim == 0 || dims.hidden_dim == 0) {
    throw std::invalid_argument("embed_dim and hidden_dim must be >= 1");
  }
  hyper.Validate();
}

bool EarlyStopper::Observe(std::size_t epoch, double accuracy) {
  if (accuracy > best_accuracy_) {
    best_accuracy_ = accuracy;
    best_epoch_ = epoch;
    stale_epochs_ = 0;
    return true;
  }
  ++stale_epochs_;
  return false;
}

std::vector<std::size_t> EpochOrder(uint64_t seed, std::size_t epoch,
                                    std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(DeriveSeed(seed, epoch));
  FisherYatesShuffle(std::span<std::size_t>(order), rng);
  return order;
}

double BagAccuracy(const ModelParams& params,
                   std::span<const LabeledBag> data) {
  if (data.empty()) throw std::invalid_argument("accuracy of an empty set");
  ForwardCache<float> cache;
  std::size_t correct = 0;
  for (const auto& ex : data) {
    Forward(params, std::span<const NgramId>(ex.bag.ids), cache);
    if (PredictClass(cache.p) == ex.cls) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

namespace {

void CheckData(std::span<const LabeledBag> data, std::size_t vocab_size,
               const char* name) {
  if (data.empty()) {
    throw std::invalid_argument(std::string(name) + " split is empty");
  }
  for (const auto& ex : data) {
    if (ex.cls != 0 && ex.cls != 1) {
      throw std::invalid_argument(std::string(name) + " split has class " +
                                  std::to_string(ex.cls));
    }
    for (const NgramId id : ex.bag.ids) {
      if (id >= vocab_size) {
        throw std::invalid_argument(std::string(name) +
                                    " split has a feature id outside the "
                                    "vocabulary");
      }
    }
  }
}

}  // namespace

TrainedModel TrainModel(std::span<const LabeledBag> train,
                        std::span<const LabeledBag> valid,
                        const TrainConfig& config,
                        const EpochCallback& on_epoch,
                        std::size_t member_index) {
  config.Validate();
  CheckData(train, config.dims.vocab_size, "train");
  CheckData(valid, config.dims.vocab_size, "valid");

  TrainedModel result;
  result.seed = config.seed;
  ModelParams params = InitParams<float>(config.dims, config.seed);
  result.params = params;
  AdamState<float> state = AdamState<float>::Fresh(config.dims);
  Gradients<float> grads = Gradients<float>::Zeros(config.dims);
  ForwardCache<float> cache;
  EarlyStopper stopper(config.patience);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto order = EpochOrder(config.seed, epoch, train.size());

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const float scale = 1.0f / static_cast<float>(end - start);
      grads.Clear();
      for (std::size_t i = start; i < end; ++i) {
        const LabeledBag& ex = train[order[i]];
        Forward(params, std::span<const NgramId>(ex.bag.ids), cache);
        loss_sum += CrossEntropy(cache.p, ex.cls);
        AccumulateBackward(params, cache, ex.cls, scale, grads);
      }
      AdamStep(params, grads, state, config.hyper);
    }

    EpochRecord record{epoch, loss_sum / static_cast<double>(train.size()),
                       BagAccuracy(params, valid)};
    result.history.push_back(record);
    if (on_epoch) on_epoch(member_index, record);
    if (stopper.Observe(epoch, record.valid_accuracy)) {
      result.params = params;
      result.best_epoch = epoch;
    }
    if (stopper.ShouldStop()) break;
  }
  return result;
}

Ensemble TrainEnsemble(std::span<const LabeledBag> train,
                       std::span<const LabeledBag> valid,
                       const TrainConfig& config,
                       std::span<const uint64_t> seeds,
                       const NgramVocabulary& vocab,
                       const EpochCallback& on_epoch, std::size_t threads) {
  if (seeds.empty()) throw std::invalid_argument("no ensemble seeds given");
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw std::invalid_argument("ensemble seeds must be distinct");
  }
  if (config.dims.vocab_size != vocab.size()) {
    throw std::invalid_argument("config vocab_size does not match vocabulary");
  }
  config.Validate();
  CheckData(train, vocab.size(), "train");
  CheckData(valid, vocab.size(), "valid");

  Ensemble ensemble;
  ensemble.vocab = vocab;
  ensemble.dims = config.dims;
  ensemble.members.resize(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());

  // Members land in their seed's slot, so completion order is irrelevant.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        TrainConfig member_config = config;
        member_config.seed = seeds[i];
        ensemble.members[i] =
            TrainModel(train, valid, member_config, on_epoch, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, seeds.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return ensemble;
}

double EnsembleAccuracy(const Ensemble& ensemble,
                        std::span<const LabeledBag> data) {
  if (data.empty()) throw std::invalid_argument("accuracy of an empty set");
  std::size_t correct = 0;
  for (const auto& ex : data) {
    const Prediction pred =
        PredictBag(ensemble, std::span<const NgramId>(ex.bag.ids));
    if (LabelToClass(pred.label) == ex.cls) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace ngramsent
