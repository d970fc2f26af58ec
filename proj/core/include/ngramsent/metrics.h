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

#ifndef NGRAMSENT_METRICS_H_
#define NGRAMSENT_METRICS_H_

#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ngramsent {

// Two texts that differ by a small edit, each with its gold label (-1/+1).
struct MinimalPair {
  std::string text_a;
  int gold_a = 1;
  std::string text_b;
  int gold_b = 1;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::map<int, ClassScores> per_class;  // keyed by label -1 and +1
  double macro_f1 = 0.0;
  std::optional<double> broken_rate;

  // {"accuracy":..., "per_class":{"-1":{...},"+1":{...}}, "macro_f1":...,
  //  "broken_rate":...}. broken_rate is omitted when absent.
  std::string ToJson() const;
};

// All three throw std::invalid_argument on empty or mismatched inputs, and
// on labels other than -1/+1.
double Accuracy(std::span<const int> preds, std::span<const int> golds);
MetricsReport F1Report(std::span<const int> preds, std::span<const int> golds);

using Classifier = std::function<int(std::string_view)>;

// Fraction of pairs on which the classifier is right on exactly one side.
double BrokenRate(std::span<const MinimalPair> pairs,
                  const Classifier& classify);

// Pair TSV: `gold_a<TAB>text_a<TAB>gold_b<TAB>text_b`, blank lines skipped.
// Malformed rows throw std::runtime_error with the line number.
std::vector<MinimalPair> ParsePairs(std::istream& in,
                                    const std::string& source = "<stream>");
std::vector<MinimalPair> LoadPairs(const std::filesystem::path& path);

}  // namespace ngramsent

#endif  // NGRAMSENT_METRICS_H_
