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

#ifndef NGRAMSENT_PROBE_H_
#define NGRAMSENT_PROBE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngramsent/inference.h"
#include "ngramsent/textproc.h"
#include "ngramsent/vocab.h"

namespace ngramsent {

struct TokenEdit {
  std::size_t position = 0;  // 0-based token index
  std::string old_token;
  std::string new_token;
};

// A single-token substitution that knocks in-vocabulary bigrams out of the
// text and flips the ensemble's label.
struct ProbeResult {
  std::string original;   // normalized tokens joined by single spaces
  std::string perturbed;  // same, after the edit
  TokenEdit edit;
  int original_label = 1;
  int perturbed_label = 1;
  // In-vocabulary bigrams of the original that the perturbation no longer
  // contains (multiset difference), in order of first appearance.
  std::vector<std::string> destroyed_bigrams;
};

// In-vocabulary bigrams of `original` missing from `perturbed`, counting
// multiplicity. Order follows `original`.
std::vector<std::string> DestroyedBigrams(const TokenSeq& original,
                                          const TokenSeq& perturbed,
                                          const NgramVocabulary& vocab);

// Tries every (position, substitute) pair and keeps those that destroy at
// least one in-vocabulary bigram and flip the label. Substitutes are
// normalized; ones that do not survive tokenization as a single token, and
// repeats, are ignored. Results are ordered by position, then by the
// substitute's first position in `substitutes`.
std::vector<ProbeResult> OovSubstitutionProbe(
    const Ensemble& ensemble, std::string_view text,
    std::span<const std::string> substitutes, TokenizerMode mode);

struct Coverage {
  std::size_t total_ngrams = 0;
  std::size_t oov_ngrams = 0;

  friend bool operator==(const Coverage&, const Coverage&) = default;
};

Coverage CoverageReport(const NgramVocabulary& vocab, const TokenSeq& tokens);
Coverage CoverageReport(const NgramVocabulary& vocab, std::string_view text,
                        TokenizerMode mode);

// `position<TAB>old<TAB>new<TAB>orig_label<TAB>new_label<TAB>bigrams` with
// the destroyed bigrams comma-joined.
std::string FormatProbeResult(const ProbeResult& result);

}  // namespace ngramsent

#endif  // NGRAMSENT_PROBE_H_
