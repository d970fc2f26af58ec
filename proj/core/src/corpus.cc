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

#include "ngramsent/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "ngramsent/rng.h"

namespace ngramsent {
namespace {

[[noreturn]] void ThrowAt(const std::string& source, std::size_t line,
                          const std::string& what) {
  std::ostringstream msg;
  msg << source << ": " << what << " at line " << line;
  throw std::runtime_error(msg.str());
}

bool ParseLabel(std::string_view field, int& label) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, label);
  return ec == std::errc() && ptr == end && !field.empty();
}

bool ParseConfidence(std::string_view field, double& value) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end && !field.empty();
}

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<Example> ParseExamples(std::istream& in, ExampleKind kind,
                                   const std::string& source) {
  std::vector<Example> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest(line);
    const auto tab1 = rest.find('\t');
    const auto tab2 =
        tab1 == std::string_view::npos ? tab1 : rest.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos ||
        rest.find('\t', tab2 + 1) != std::string_view::npos) {
      ThrowAt(source, line_no, "expected 3 tab-separated columns");
    }

    Example ex;
    ex.kind = kind;
    if (!ParseLabel(rest.substr(0, tab1), ex.label)) {
      ThrowAt(source, line_no, "non-numeric label");
    }
    if (ex.label < -1 || ex.label > 1) {
      ThrowAt(source, line_no, "label out of range");
    }
    if (!ParseConfidence(rest.substr(tab1 + 1, tab2 - tab1 - 1),
                         ex.confidence)) {
      ThrowAt(source, line_no, "non-numeric confidence");
    }
    if (!(ex.confidence >= 0.0 && ex.confidence <= 1.0)) {
      ThrowAt(source, line_no, "confidence out of range");
    }
    const std::string_view text = Trim(rest.substr(tab2 + 1));
    if (text.empty()) ThrowAt(source, line_no, "empty text");
    ex.text = std::string(text);
    out.push_back(std::move(ex));
  }
  if (in.bad()) throw std::runtime_error(source + ": read error");
  return out;
}

std::vector<Example> LoadExamples(const std::filesystem::path& path,
                                  ExampleKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ParseExamples(in, kind, path.string());
}

std::vector<Example> FilterBinary(const std::vector<Example>& examples) {
  std::vector<Example> out;
  std::copy_if(examples.begin(), examples.end(), std::back_inserter(out),
               [](const Example& ex) { return ex.label == -1 || ex.label == 1; });
  return out;
}

Split ShuffleSplit(const std::vector<Example>& examples, const SplitSpec& spec) {
  if (spec.train_count > examples.size() ||
      spec.valid_count > examples.size() - spec.train_count) {
    std::ostringstream msg;
    msg << "split needs " << spec.train_count << " train + " << spec.valid_count
        << " valid examples but only " << examples.size() << " are available";
    throw std::invalid_argument(msg.str());
  }
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(spec.seed);
  FisherYatesShuffle(std::span<std::size_t>(order), rng);

  Split split;
  split.train.reserve(spec.train_count);
  split.valid.reserve(spec.valid_count);
  for (std::size_t i = 0; i < spec.train_count; ++i) {
    split.train.push_back(examples[order[i]]);
  }
  for (std::size_t i = order.size() - spec.valid_count; i < order.size(); ++i) {
    split.valid.push_back(examples[order[i]]);
  }
  return split;
}

SplitSpec DefaultSplitSpec(std::size_t available, uint64_t seed) {
  constexpr std::size_t kNeeded =
      SplitSpec::kDefaultTrainCount + SplitSpec::kDefaultValidCount;
  if (available < kNeeded) {
    std::ostringstream msg;
    msg << "corpus has " << available << " binary examples (< " << kNeeded
        << "); pass --train-count and --valid-count explicitly";
    throw std::invalid_argument(msg.str());
  }
  return SplitSpec{seed, SplitSpec::kDefaultTrainCount,
                   SplitSpec::kDefaultValidCount};
}

}  // namespace ngramsent
