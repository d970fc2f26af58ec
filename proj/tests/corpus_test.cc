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
#include <map>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "support/synthetic.h"

namespace ngramsent {
namespace {

using ::testing::HasSubstr;

std::vector<Example> Parse(const std::string& text,
                           ExampleKind kind = ExampleKind::kSentence) {
  std::istringstream in(text);
  return ParseExamples(in, kind);
}

std::string ParseError(const std::string& text) {
  try {
    Parse(text);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

std::vector<Example> Numbered(std::size_t n) {
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"text " + std::to_string(i), i % 2 ? 1 : -1, 0.5,
                   ExampleKind::kSentence});
  }
  return out;
}

TEST(LoadExamplesTest, MapsFields) {
  const auto examples = Parse("1\t0.9\tgreat film\n");
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].text, "great film");
  EXPECT_EQ(examples[0].label, 1);
  EXPECT_DOUBLE_EQ(examples[0].confidence, 0.9);
  EXPECT_EQ(examples[0].kind, ExampleKind::kSentence);
}

TEST(LoadExamplesTest, KeepsNeutralPhrases) {
  const auto examples = Parse("0\t0.5\tthe\n", ExampleKind::kPhrase);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].label, 0);
  EXPECT_EQ(examples[0].kind, ExampleKind::kPhrase);
}

TEST(LoadExamplesTest, SkipsBlankLinesAndKeepsOrder) {
  const auto examples = Parse("-1\t1\ta\n\n+1\t0\tb\r\n");
  ASSERT_EQ(examples.size(), 2u);
  EXPECT_EQ(examples[0].text, "a");
  EXPECT_EQ(examples[1].text, "b");
  EXPECT_EQ(examples[1].label, 1);
}

TEST(LoadExamplesTest, MalformedRowsNameTheLine) {
  EXPECT_THAT(ParseError("1\t0.5\tok\n2\t0.5\tx\n"),
              HasSubstr("label out of range at line 2"));
  EXPECT_THAT(ParseError("1\t0.5\n"), HasSubstr("columns at line 1"));
  EXPECT_THAT(ParseError("1\t0.5\ta\tb\n"), HasSubstr("columns at line 1"));
  EXPECT_THAT(ParseError("pos\t0.5\tx\n"), HasSubstr("non-numeric label"));
  EXPECT_THAT(ParseError("1\thigh\tx\n"), HasSubstr("non-numeric confidence"));
  EXPECT_THAT(ParseError("1\t1.5\tx\n"), HasSubstr("confidence out of range"));
  EXPECT_THAT(ParseError("\n\n1\t0.5\t   \n"), HasSubstr("empty text at line 3"));
}

TEST(LoadExamplesTest, MissingFileIsIoError) {
  try {
    LoadExamples("/nonexistent/ngramsent.tsv", ExampleKind::kSentence);
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_THAT(e.what(), HasSubstr("cannot open"));
  }
}

TEST(FilterBinaryTest, DropsNeutral) {
  std::vector<Example> in = {{"a", -1, 0, ExampleKind::kPhrase},
                             {"b", 0, 0, ExampleKind::kPhrase},
                             {"c", 1, 0, ExampleKind::kPhrase}};
  const auto out = FilterBinary(in);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "a");
  EXPECT_EQ(out[1].text, "c");
  EXPECT_TRUE(FilterBinary({{"x", 0, 0, ExampleKind::kPhrase}}).empty());
  EXPECT_TRUE(FilterBinary({}).empty());
}

TEST(FilterBinaryTest, Idempotent) {
  std::vector<Example> in;
  for (int i = 0; i < 30; ++i) {
    in.push_back({"t" + std::to_string(i), i % 3 - 1, 0.1, ExampleKind::kPhrase});
  }
  const auto once = FilterBinary(in);
  EXPECT_EQ(FilterBinary(once), once);
}

TEST(ShuffleSplitTest, DeterministicAndDisjoint) {
  const auto examples = Numbered(10);
  const SplitSpec spec{123, 8, 2};
  const Split a = ShuffleSplit(examples, spec);
  const Split b = ShuffleSplit(examples, spec);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.valid, b.valid);
  ASSERT_EQ(a.train.size(), 8u);
  ASSERT_EQ(a.valid.size(), 2u);
  for (const auto& v : a.valid) {
    EXPECT_EQ(std::count(a.train.begin(), a.train.end(), v), 0);
  }
}

TEST(ShuffleSplitTest, TakesFrontAndBackOfShuffle) {
  // splitmix64(7) shuffles 0..9 into 8 1 5 9 0 4 3 2 6 7.
  const auto examples = Numbered(10);
  const Split s = ShuffleSplit(examples, {7, 3, 2});
  ASSERT_EQ(s.train.size(), 3u);
  EXPECT_EQ(s.train[0].text, "text 8");
  EXPECT_EQ(s.train[1].text, "text 1");
  EXPECT_EQ(s.train[2].text, "text 5");
  EXPECT_EQ(s.valid[0].text, "text 6");
  EXPECT_EQ(s.valid[1].text, "text 7");
}

TEST(ShuffleSplitTest, CountsMustFit) {
  EXPECT_THROW(ShuffleSplit(Numbered(10), {1, 8, 3}), std::invalid_argument);
  EXPECT_THROW(ShuffleSplit(Numbered(10), {1, 11, 0}), std::invalid_argument);
  EXPECT_NO_THROW(ShuffleSplit(Numbered(10), {1, 8, 2}));
}

TEST(ShuffleSplitTest, SubMultisetPropertyWithDuplicates) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<Example> in;
    for (int i = 0; i < 40; ++i) {
      in.push_back({"dup " + std::to_string(i % 7), 1, 0.5, ExampleKind::kPhrase});
    }
    const Split s = ShuffleSplit(in, {seed, 25, 10});
    std::map<std::string, int> budget;
    for (const auto& ex : in) ++budget[ex.text];
    for (const auto& ex : s.train) ASSERT_GE(--budget[ex.text], 0);
    for (const auto& ex : s.valid) ASSERT_GE(--budget[ex.text], 0);
  }
}

TEST(DefaultSplitSpecTest, OnlyAtReferenceScale) {
  const SplitSpec spec = DefaultSplitSpec(173657, 5);
  EXPECT_EQ(spec.train_count, 160000u);
  EXPECT_EQ(spec.valid_count, 10000u);
  EXPECT_EQ(spec.seed, 5u);
  // Whatever lies beyond the two splits is ignored.
  EXPECT_EQ(173657 - spec.train_count - spec.valid_count, 3657u);
  EXPECT_EQ(DefaultSplitSpec(170000, 5).train_count, 160000u);
  EXPECT_THROW(DefaultSplitSpec(169999, 5), std::invalid_argument);
}

}  // namespace
}  // namespace ngramsent
