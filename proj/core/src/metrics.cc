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

#include "ngramsent/metrics.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ngramsent {
namespace {

void CheckInputs(std::span<const int> preds, std::span<const int> golds) {
  if (preds.size() != golds.size()) {
    throw std::invalid_argument("predictions and gold labels differ in length");
  }
  if (preds.empty()) throw std::invalid_argument("no predictions to score");
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if ((preds[i] != 1 && preds[i] != -1) || (golds[i] != 1 && golds[i] != -1)) {
      throw std::invalid_argument("labels must be -1 or +1");
    }
  }
}

double SafeDiv(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

bool ParseBinaryLabel(std::string_view field, int& label) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, label);
  return ec == std::errc() && ptr == end && !field.empty() &&
         (label == 1 || label == -1);
}

}  // namespace

double Accuracy(std::span<const int> preds, std::span<const int> golds) {
  CheckInputs(preds, golds);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i] == golds[i];
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

MetricsReport F1Report(std::span<const int> preds, std::span<const int> golds) {
  MetricsReport report;
  report.accuracy = Accuracy(preds, golds);
  for (const int c : {-1, 1}) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (preds[i] == c && golds[i] == c) ++tp;
      if (preds[i] == c && golds[i] != c) ++fp;
      if (preds[i] != c && golds[i] == c) ++fn;
    }
    ClassScores s;
    s.precision = SafeDiv(tp, tp + fp);
    s.recall = SafeDiv(tp, tp + fn);
    s.f1 = SafeDiv(2 * s.precision * s.recall, s.precision + s.recall);
    report.per_class[c] = s;
  }
  report.macro_f1 = (report.per_class[-1].f1 + report.per_class[1].f1) / 2;
  return report;
}

double BrokenRate(std::span<const MinimalPair> pairs,
                  const Classifier& classify) {
  if (pairs.empty()) throw std::invalid_argument("no minimal pairs to score");
  std::size_t broken = 0;
  for (const auto& pair : pairs) {
    const bool a_ok = classify(pair.text_a) == pair.gold_a;
    const bool b_ok = classify(pair.text_b) == pair.gold_b;
    broken += a_ok != b_ok;
  }
  return static_cast<double>(broken) / static_cast<double>(pairs.size());
}

std::string MetricsReport::ToJson() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  nlohmann::ordered_json classes;
  for (const int c : {-1, 1}) {
    const auto it = per_class.find(c);
    if (it == per_class.end()) continue;
    classes[c > 0 ? "+1" : "-1"] = {{"precision", it->second.precision},
                                    {"recall", it->second.recall},
                                    {"f1", it->second.f1}};
  }
  j["per_class"] = classes;
  j["macro_f1"] = macro_f1;
  if (broken_rate) j["broken_rate"] = *broken_rate;
  return j.dump();
}

std::vector<MinimalPair> ParsePairs(std::istream& in,
                                    const std::string& source) {
  std::vector<MinimalPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error(source + ": " + what + " at line " +
                             std::to_string(line_no));
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (auto tab = rest.find('\t'); tab != std::string_view::npos;
         tab = rest.find('\t')) {
      cols.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 4) fail("expected 4 tab-separated columns");
    MinimalPair pair;
    if (!ParseBinaryLabel(cols[0], pair.gold_a) ||
        !ParseBinaryLabel(cols[2], pair.gold_b)) {
      fail("pair labels must be -1 or +1");
    }
    pair.text_a = std::string(cols[1]);
    pair.text_b = std::string(cols[3]);
    if (pair.text_a.empty() || pair.text_b.empty()) fail("empty pair text");
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<MinimalPair> LoadPairs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ParsePairs(in, path.string());
}

}  // namespace ngramsent
