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

#ifndef NGRAMSENT_RNG_H_
#define NGRAMSENT_RNG_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace ngramsent {

// splitmix64. Every random decision in the project (corpus split, parameter
// initialization, epoch order) is drawn from this generator so that results
// are bit-reproducible across platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Integer in [0, bound]. Plain modulo reduction; the bias is below
  // bound / 2^64 and keeps the mapping trivial to port.
  uint64_t UniformInclusive(uint64_t bound) {
    const uint64_t r = Next();
    return bound == UINT64_MAX ? r : r % (bound + 1);
  }

  // Double in [0, 1) built from the top 53 bits.
  double UniformUnit() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// Seed of an independent stream `stream` derived from a base seed.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return g.Next();
}

// Modern (Durstenfeld) Fisher-Yates, walking i from the last index down to 1
// and swapping with j drawn from [0, i].
template <typename T>
void FisherYatesShuffle(std::span<T> items, SplitMix64& rng) {
  if (items.size() < 2) return;
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.UniformInclusive(i));
    using std::swap;
    swap(items[i], items[j]);
  }
}

}  // namespace ngramsent

#endif  // NGRAMSENT_RNG_H_
