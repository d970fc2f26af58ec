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

#ifndef NGRAMSENT_TEXTPROC_H_
#define NGRAMSENT_TEXTPROC_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ngramsent {

// Tokens are non-empty, lowercase, and contain neither whitespace nor '"'.
using TokenSeq = std::vector<std::string>;

enum class TokenizerMode {
  // Whitespace split only. Used for the training files, which arrive
  // tokenized.
  kPretokenized,
  // Whitespace split, then trailing . , ! ? ; : are peeled off into their
  // own tokens. Used for raw evaluation text.
  kRuleBased,
};

std::string_view TokenizerModeName(TokenizerMode mode);
// Throws std::invalid_argument for anything but "pretokenized"/"rule_based".
TokenizerMode ParseTokenizerMode(std::string_view name);

// Lowercases a UTF-8 code point with the Unicode simple mapping.
char32_t SimpleLowercase(char32_t cp);

// Deletes every '"' and applies the simple lowercase mapping to each code
// point. Bytes that are not valid UTF-8 are copied through unchanged.
std::string Normalize(std::string_view text);

TokenSeq Tokenize(std::string_view normalized_text, TokenizerMode mode);

// All contiguous n-grams for n = 1..max_n, ordered by (n, start). Tokens of
// an n-gram are joined by a single space.
std::vector<std::string> ExtractNgrams(const TokenSeq& tokens, int max_n);

// Number of n-grams ExtractNgrams would return.
std::size_t NgramCount(std::size_t num_tokens, int max_n);

}  // namespace ngramsent

#endif  // NGRAMSENT_TEXTPROC_H_
