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

#include "ngramsent/probe.h"

#include <map>
#include <set>

namespace ngramsent {
namespace {

std::string Join(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> InVocabBigrams(const TokenSeq& tokens,
                                        const NgramVocabulary& vocab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    std::string gram = tokens[i] + ' ' + tokens[i + 1];
    if (vocab.Contains(gram)) out.push_back(std::move(gram));
  }
  return out;
}

}  // namespace

std::vector<std::string> DestroyedBigrams(const TokenSeq& original,
                                          const TokenSeq& perturbed,
                                          const NgramVocabulary& vocab) {
  std::map<std::string, int> remaining;
  for (auto& gram : InVocabBigrams(perturbed, vocab)) ++remaining[gram];
  std::vector<std::string> destroyed;
  for (auto& gram : InVocabBigrams(original, vocab)) {
    auto it = remaining.find(gram);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
    } else {
      destroyed.push_back(std::move(gram));
    }
  }
  return destroyed;
}

std::vector<ProbeResult> OovSubstitutionProbe(
    const Ensemble& ensemble, std::string_view text,
    std::span<const std::string> substitutes, TokenizerMode mode) {
  const TokenSeq tokens = Tokenize(Normalize(text), mode);
  std::vector<ProbeResult> results;
  if (InVocabBigrams(tokens, ensemble.vocab).empty()) return results;

  std::vector<std::string> candidates;
  std::set<std::string> seen;
  for (const auto& raw : substitutes) {
    TokenSeq single = Tokenize(Normalize(raw), mode);
    if (single.size() != 1) continue;
    if (seen.insert(single.front()).second) {
      candidates.push_back(std::move(single.front()));
    }
  }

  const auto orig_bag = Featurize(tokens, ensemble.vocab);
  const int orig_label =
      PredictBag(ensemble, std::span<const NgramId>(orig_bag.ids)).label;
  const std::string original = Join(tokens);

  TokenSeq perturbed = tokens;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    for (const auto& sub : candidates) {
      if (sub == tokens[pos]) continue;
      perturbed[pos] = sub;
      auto destroyed = DestroyedBigrams(tokens, perturbed, ensemble.vocab);
      if (!destroyed.empty()) {
        const auto bag = Featurize(perturbed, ensemble.vocab);
        const int label =
            PredictBag(ensemble, std::span<const NgramId>(bag.ids)).label;
        if (label != orig_label) {
          results.push_back({original, Join(perturbed),
                             {pos, tokens[pos], sub}, orig_label, label,
                             std::move(destroyed)});
        }
      }
    }
    perturbed[pos] = tokens[pos];
  }
  return results;
}

Coverage CoverageReport(const NgramVocabulary& vocab, const TokenSeq& tokens) {
  Coverage c;
  for (const auto& gram : ExtractNgrams(tokens, vocab.max_n())) {
    ++c.total_ngrams;
    if (!vocab.Contains(gram)) ++c.oov_ngrams;
  }
  return c;
}

Coverage CoverageReport(const NgramVocabulary& vocab, std::string_view text,
                        TokenizerMode mode) {
  return CoverageReport(vocab, Tokenize(Normalize(text), mode));
}

std::string FormatProbeResult(const ProbeResult& r) {
  std::string out = std::to_string(r.edit.position) + '\t' + r.edit.old_token +
                    '\t' + r.edit.new_token + '\t' +
                    std::to_string(r.original_label) + '\t' +
                    std::to_string(r.perturbed_label) + '\t';
  for (std::size_t i = 0; i < r.destroyed_bigrams.size(); ++i) {
    if (i) out.push_back(',');
    out += r.destroyed_bigrams[i];
  }
  return out;
}

}  // namespace ngramsent
