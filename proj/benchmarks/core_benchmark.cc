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

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "ngramsent/nncore.h"
#include "ngramsent/optim.h"
#include "ngramsent/rng.h"
#include "ngramsent/textproc.h"
#include "ngramsent/vocab.h"

namespace ngramsent {
namespace {

std::vector<NgramId> RandomBag(SplitMix64& rng, std::size_t vocab,
                               std::size_t size) {
  std::vector<NgramId> bag(size);
  for (auto& id : bag) id = static_cast<NgramId>(rng.UniformInclusive(vocab - 1));
  return bag;
}

std::vector<std::string> RandomSentences(std::size_t count, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string s;
    const auto len = 5 + rng.UniformInclusive(20);
    for (uint64_t k = 0; k < len; ++k) {
      if (k) s += ' ';
      s += "w" + std::to_string(rng.UniformInclusive(5000));
    }
    out.push_back(std::move(s));
  }
  return out;
}

void BM_ForwardBackward(benchmark::State& state) {
  const ModelDims dims{100000, 32, 32};
  const auto params = InitParams<float>(dims, 1);
  SplitMix64 rng(2);
  const auto bag = RandomBag(rng, dims.vocab_size, state.range(0));
  auto grads = Gradients<float>::Zeros(dims);
  for (auto _ : state) {
    grads.Clear();
    const auto cache = Forward(params, std::span<const NgramId>(bag));
    AccumulateBackward(params, cache, 1, 1.0f, grads);
    benchmark::DoNotOptimize(grads.b2.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ForwardBackward)->Arg(8)->Arg(32)->Arg(128);

void BM_AdamStep(benchmark::State& state) {
  const ModelDims dims{100000, 32, 32};
  auto params = InitParams<float>(dims, 1);
  auto adam = AdamState<float>::Fresh(dims);
  SplitMix64 rng(3);
  auto grads = Gradients<float>::Zeros(dims);
  for (int i = 0; i < 64; ++i) {
    const auto bag = RandomBag(rng, dims.vocab_size, 20);
    const auto cache = Forward(params, std::span<const NgramId>(bag));
    AccumulateBackward(params, cache, i % 2, 1.0f / 64, grads);
  }
  for (auto _ : state) {
    AdamStep(params, grads, adam, AdamHyper{});
  }
  state.counters["rows"] = static_cast<double>(grads.embedding.ids().size());
}
BENCHMARK(BM_AdamStep);

void BM_Featurize(benchmark::State& state) {
  const auto texts = RandomSentences(2000, 4);
  std::vector<TokenSeq> tokens;
  for (const auto& t : texts) {
    tokens.push_back(Tokenize(Normalize(t), TokenizerMode::kRuleBased));
  }
  const auto vocab = BuildVocabulary(tokens, 2, 100000);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& text = texts[i++ % texts.size()];
    auto bag = Featurize(Tokenize(Normalize(text), TokenizerMode::kRuleBased),
                         vocab);
    benchmark::DoNotOptimize(bag.ids.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Featurize);

void BM_BuildVocabulary(benchmark::State& state) {
  const auto texts = RandomSentences(state.range(0), 5);
  std::vector<TokenSeq> tokens;
  for (const auto& t : texts) {
    tokens.push_back(Tokenize(t, TokenizerMode::kPretokenized));
  }
  for (auto _ : state) {
    auto vocab = BuildVocabulary(tokens, 2, 100000);
    benchmark::DoNotOptimize(vocab.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildVocabulary)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace ngramsent

BENCHMARK_MAIN();
