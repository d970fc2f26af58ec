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

#ifndef NGRAMSENT_CORPUS_H_
#define NGRAMSENT_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace ngramsent {

enum class ExampleKind { kSentence, kPhrase };

// One labeled text unit as read from disk. `confidence` is kept for fidelity
// with the source files; nothing downstream reads it.
struct Example {
  std::string text;
  int label = 0;  // -1, 0 (neutral, phrases only) or +1
  double confidence = 0.0;
  ExampleKind kind = ExampleKind::kSentence;

  friend bool operator==(const Example&, const Example&) = default;
};

struct SplitSpec {
  static constexpr std::size_t kDefaultTrainCount = 160000;
  static constexpr std::size_t kDefaultValidCount = 10000;

  uint64_t seed = 1;
  std::size_t train_count = 0;
  std::size_t valid_count = 0;
};

struct Split {
  std::vector<Example> train;
  std::vector<Example> valid;
};

// Parses `label<TAB>confidence<TAB>text` rows. Blank lines are skipped; any
// malformed row throws std::runtime_error naming `source` and the 1-based
// line number.
std::vector<Example> ParseExamples(std::istream& in, ExampleKind kind,
                                   const std::string& source = "<stream>");

// Reads a TSV corpus file. Throws std::runtime_error("cannot open ...") if
// the file is unreadable.
std::vector<Example> LoadExamples(const std::filesystem::path& path,
                                  ExampleKind kind);

// Keeps only examples labeled -1 or +1, in order.
std::vector<Example> FilterBinary(const std::vector<Example>& examples);

// Shuffles a copy of `examples` with splitmix64(spec.seed) and returns the
// first train_count items as train and the last valid_count items as valid.
// Items in between are dropped. Throws std::invalid_argument if the counts
// exceed the number of examples.
Split ShuffleSplit(const std::vector<Example>& examples, const SplitSpec& spec);

// The default 160k/10k split for a filtered corpus of `available` items,
// or throws std::invalid_argument if the corpus is too small to use it.
SplitSpec DefaultSplitSpec(std::size_t available, uint64_t seed);

}  // namespace ngramsent

#endif  // NGRAMSENT_CORPUS_H_
