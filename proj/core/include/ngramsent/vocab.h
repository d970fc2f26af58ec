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

#ifndef NGRAMSENT_VOCAB_H_
#define NGRAMSENT_VOCAB_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ngramsent/textproc.h"

namespace ngramsent {

// Dense vocabulary id. The id of an entry is its rank in the vocabulary.
using NgramId = uint32_t;

// Multiset of vocabulary ids for one text, in extraction order.
struct FeatureBag {
  std::vector<NgramId> ids;

  bool empty() const { return ids.empty(); }
  std::size_t size() const { return ids.size(); }
  friend bool operator==(const FeatureBag&, const FeatureBag&) = default;
};

struct VocabEntry {
  std::string ngram;
  uint64_t count = 0;

  friend bool operator==(const VocabEntry&, const VocabEntry&) = default;
};

// Frequency-ranked n-gram vocabulary. Entries are sorted by count
// descending, ties broken by byte-wise ascending n-gram.
class NgramVocabulary {
 public:
  static constexpr int kDefaultMaxN = 2;
  static constexpr std::size_t kDefaultCapacity = 100000;

  NgramVocabulary() = default;
  // Takes already-ranked entries. Throws std::invalid_argument if they are
  // not in rank order, contain duplicates or zero counts, or exceed capacity.
  NgramVocabulary(std::vector<VocabEntry> entries, int max_n,
                  std::size_t capacity);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int max_n() const { return max_n_; }
  std::size_t capacity() const { return capacity_; }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  const VocabEntry& entry(NgramId id) const { return entries_.at(id); }

  // Returns false if `ngram` is out of vocabulary.
  bool Lookup(std::string_view ngram, NgramId& id) const;
  bool Contains(std::string_view ngram) const;

  friend bool operator==(const NgramVocabulary& a, const NgramVocabulary& b) {
    return a.max_n_ == b.max_n_ && a.entries_ == b.entries_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, NgramId, Hash, std::equal_to<>> index_;
  int max_n_ = kDefaultMaxN;
  std::size_t capacity_ = kDefaultCapacity;
};

// Raw n-gram occurrence counts. Merging two count tables is a pointwise sum,
// so counting can be sharded.
using NgramCounts = std::unordered_map<std::string, uint64_t>;

void CountNgrams(const TokenSeq& tokens, int max_n, NgramCounts& counts);
void MergeCounts(const NgramCounts& from, NgramCounts& into);

// Keeps the `capacity` highest-ranked n-grams of `counts`.
NgramVocabulary VocabularyFromCounts(const NgramCounts& counts, int max_n,
                                     std::size_t capacity);

NgramVocabulary BuildVocabulary(std::span<const TokenSeq> texts, int max_n,
                                std::size_t capacity);

// Ids of every in-vocabulary n-gram of `tokens`, duplicates kept.
FeatureBag Featurize(const TokenSeq& tokens, const NgramVocabulary& vocab);

// vocab.tsv: `ngram<TAB>count` per line in id order.
void WriteVocabulary(const NgramVocabulary& vocab, std::ostream& out);
void SaveVocabulary(const NgramVocabulary& vocab,
                    const std::filesystem::path& path);
// `max_n` and `capacity` are not stored in the file and must be supplied.
NgramVocabulary ReadVocabulary(std::istream& in, int max_n,
                               std::size_t capacity,
                               const std::string& source = "<stream>");
NgramVocabulary LoadVocabulary(const std::filesystem::path& path, int max_n,
                               std::size_t capacity);

}  // namespace ngramsent

#endif  // NGRAMSENT_VOCAB_H_
