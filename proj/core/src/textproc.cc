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

#include "ngramsent/textproc.h"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace ngramsent {
namespace {

struct LowerRange {
  char32_t first;
  char32_t last;
  int stride;
  int delta;
};

constexpr LowerRange kLowerRanges[] = {
#include "unicode_lower.inc"
};

constexpr bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

constexpr bool IsSplitPunct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':';
}

// Decodes one code point at `pos`. Returns the byte length, or 0 if the
// sequence is not well-formed UTF-8.
std::size_t DecodeUtf8(std::string_view s, std::size_t pos, char32_t& cp) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  std::size_t len;
  char32_t min;
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return 0;
  }
  if (pos + len > s.size()) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

void EncodeUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::string_view TokenizerModeName(TokenizerMode mode) {
  return mode == TokenizerMode::kPretokenized ? "pretokenized" : "rule_based";
}

TokenizerMode ParseTokenizerMode(std::string_view name) {
  if (name == "pretokenized") return TokenizerMode::kPretokenized;
  if (name == "rule_based") return TokenizerMode::kRuleBased;
  throw std::invalid_argument("unknown tokenizer mode: " + std::string(name));
}

char32_t SimpleLowercase(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  // Ranges are sorted by `first`; find the last one starting at or before cp.
  const auto* it = std::upper_bound(
      std::begin(kLowerRanges), std::end(kLowerRanges), cp,
      [](char32_t c, const LowerRange& r) { return c < r.first; });
  if (it == std::begin(kLowerRanges)) return cp;
  const LowerRange& r = *(it - 1);
  if (cp > r.last || (cp - r.first) % r.stride != 0) return cp;
  return static_cast<char32_t>(static_cast<int>(cp) + r.delta);
}

std::string Normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    const std::size_t len = DecodeUtf8(text, pos, cp);
    if (len == 0) {
      out.push_back(text[pos++]);
      continue;
    }
    pos += len;
    if (cp == U'"') continue;
    EncodeUtf8(SimpleLowercase(cp), out);
  }
  return out;
}

TokenSeq Tokenize(std::string_view text, TokenizerMode mode) {
  TokenSeq tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && IsAsciiSpace(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !IsAsciiSpace(text[end])) ++end;
    if (end == pos) break;
    std::string_view word = text.substr(pos, end - pos);
    pos = end;

    if (mode == TokenizerMode::kPretokenized) {
      tokens.emplace_back(word);
      continue;
    }
    std::size_t stem = word.size();
    while (stem > 0 && IsSplitPunct(word[stem - 1])) --stem;
    if (stem > 0) tokens.emplace_back(word.substr(0, stem));
    for (std::size_t i = stem; i < word.size(); ++i) {
      tokens.emplace_back(1, word[i]);
    }
  }
  return tokens;
}

std::vector<std::string> ExtractNgrams(const TokenSeq& tokens, int max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  std::vector<std::string> out;
  out.reserve(NgramCount(tokens.size(), max_n));
  for (int n = 1; n <= max_n; ++n) {
    const auto width = static_cast<std::size_t>(n);
    for (std::size_t start = 0; start + width <= tokens.size(); ++start) {
      std::string gram = tokens[start];
      for (std::size_t k = 1; k < width; ++k) {
        gram.push_back(' ');
        gram += tokens[start + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

std::size_t NgramCount(std::size_t num_tokens, int max_n) {
  std::size_t total = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (width <= num_tokens) total += num_tokens - width + 1;
  }
  return total;
}

}  // namespace ngramsent
