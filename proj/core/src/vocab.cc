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

#include "ngramsent/vocab.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ngramsent {
namespace {

bool RanksBefore(const VocabEntry& a, const VocabEntry& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.ngram < b.ngram;
}

}  // namespace

NgramVocabulary::NgramVocabulary(std::vector<VocabEntry> entries, int max_n,
                                 std::size_t capacity)
    : entries_(std::move(entries)), max_n_(max_n), capacity_(capacity) {
  if (max_n_ < 1) throw std::invalid_argument("max_n must be >= 1");
  if (entries_.size() > capacity_) {
    throw std::invalid_argument("vocabulary larger than its capacity");
  }
  if (entries_.size() > UINT32_MAX) {
    throw std::invalid_argument("vocabulary too large for 32-bit ids");
  }
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const VocabEntry& e = entries_[i];
    if (e.count == 0) {
      throw std::invalid_argument("zero count for n-gram '" + e.ngram + "'");
    }
    if (i > 0 && !RanksBefore(entries_[i - 1], e)) {
      throw std::invalid_argument("vocabulary entries out of rank order at '" +
                                  e.ngram + "'");
    }
    index_.emplace(e.ngram, static_cast<NgramId>(i));
  }
}

bool NgramVocabulary::Lookup(std::string_view ngram, NgramId& id) const {
  const auto it = index_.find(ngram);
  if (it == index_.end()) return false;
  id = it->second;
  return true;
}

bool NgramVocabulary::Contains(std::string_view ngram) const {
  return index_.find(ngram) != index_.end();
}

void CountNgrams(const TokenSeq& tokens, int max_n, NgramCounts& counts) {
  for (auto& gram : ExtractNgrams(tokens, max_n)) ++counts[std::move(gram)];
}

void MergeCounts(const NgramCounts& from, NgramCounts& into) {
  for (const auto& [gram, count] : from) into[gram] += count;
}

NgramVocabulary VocabularyFromCounts(const NgramCounts& counts, int max_n,
                                     std::size_t capacity) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  std::vector<VocabEntry> entries;
  entries.reserve(counts.size());
  for (const auto& [gram, count] : counts) entries.push_back({gram, count});
  const std::size_t keep = std::min(capacity, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + keep, entries.end(),
                    RanksBefore);
  entries.resize(keep);
  return NgramVocabulary(std::move(entries), max_n, capacity);
}

NgramVocabulary BuildVocabulary(std::span<const TokenSeq> texts, int max_n,
                                std::size_t capacity) {
  NgramCounts counts;
  for (const TokenSeq& tokens : texts) CountNgrams(tokens, max_n, counts);
  return VocabularyFromCounts(counts, max_n, capacity);
}

FeatureBag Featurize(const TokenSeq& tokens, const NgramVocabulary& vocab) {
  FeatureBag bag;
  for (const auto& gram : ExtractNgrams(tokens, vocab.max_n())) {
    NgramId id;
    if (vocab.Lookup(gram, id)) bag.ids.push_back(id);
  }
  return bag;
}

void WriteVocabulary(const NgramVocabulary& vocab, std::ostream& out) {
  for (const auto& e : vocab.entries()) out << e.ngram << '\t' << e.count << '\n';
}

void SaveVocabulary(const NgramVocabulary& vocab,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  WriteVocabulary(vocab, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

NgramVocabulary ReadVocabulary(std::istream& in, int max_n,
                               std::size_t capacity,
                               const std::string& source) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tab = line.rfind('\t');
    VocabEntry e;
    if (tab == std::string::npos || tab == 0) {
      throw std::runtime_error(source + ": malformed vocabulary row at line " +
                               std::to_string(line_no));
    }
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, e.count);
    if (ec != std::errc() || ptr != last || first == last) {
      throw std::runtime_error(source + ": bad count at line " +
                               std::to_string(line_no));
    }
    e.ngram = line.substr(0, tab);
    entries.push_back(std::move(e));
  }
  try {
    return NgramVocabulary(std::move(entries), max_n, capacity);
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(source + ": " + err.what());
  }
}

NgramVocabulary LoadVocabulary(const std::filesystem::path& path, int max_n,
                               std::size_t capacity) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadVocabulary(in, max_n, capacity, path.string());
}

}  // namespace ngramsent
