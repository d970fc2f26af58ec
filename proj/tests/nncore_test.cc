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

#include "ngramsent/nncore.h"

#include <cmath>
#include <cstring>

#include "gtest/gtest.h"
#include "ngramsent/rng.h"
#include "support/gradient_oracle.h"

namespace ngramsent {
namespace {

using testing::CheckGradients;

std::vector<NgramId> RandomBag(SplitMix64& rng, std::size_t vocab,
                               std::size_t max_len) {
  std::vector<NgramId> bag;
  const auto len = rng.UniformInclusive(max_len);
  for (uint64_t i = 0; i < len; ++i) {
    bag.push_back(static_cast<NgramId>(rng.UniformInclusive(vocab - 1)));
  }
  return bag;
}

TEST(InitParamsTest, DeterministicGlorotWithZeroBiases) {
  const ModelDims dims{50, 8, 4};
  const auto a = InitParams<float>(dims, 17);
  const auto b = InitParams<float>(dims, 17);
  ASSERT_EQ(a.embedding.size(), 400u);
  EXPECT_EQ(0, std::memcmp(a.embedding.data(), b.embedding.data(), 400 * 4));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, InitParams<float>(dims, 18));
  for (float v : a.b1) EXPECT_EQ(v, 0.0f);
  for (float v : a.b2) EXPECT_EQ(v, 0.0f);
  const float e_limit = std::sqrt(6.0f / 58.0f);
  const float w1_limit = std::sqrt(6.0f / 12.0f);
  const float w2_limit = std::sqrt(6.0f / 6.0f);
  for (float v : a.embedding) EXPECT_LE(std::abs(v), e_limit);
  for (float v : a.w1) EXPECT_LE(std::abs(v), w1_limit);
  for (float v : a.w2) EXPECT_LE(std::abs(v), w2_limit);
}

TEST(InitParamsTest, FloatIsRoundedDouble) {
  const ModelDims dims{5, 3, 2};
  const auto f = InitParams<float>(dims, 3);
  const auto d = InitParams<double>(dims, 3);
  for (std::size_t i = 0; i < f.w1.size(); ++i) {
    EXPECT_EQ(f.w1[i], static_cast<float>(d.w1[i]));
  }
}

TEST(InitParamsTest, EmptyVocabulary) {
  const auto p = InitParams<float>({0, 4, 3}, 1);
  EXPECT_TRUE(p.embedding.empty());
  const auto cache = Forward(p, std::span<const NgramId>{});
  EXPECT_NEAR(cache.p[0] + cache.p[1], 1.0f, 1e-6f);
}

TEST(SoftmaxTest, AnalyticValues) {
  const auto half = Softmax<double>({0.0, 0.0});
  EXPECT_DOUBLE_EQ(half[0], 0.5);
  EXPECT_DOUBLE_EQ(half[1], 0.5);
  const auto p = Softmax<double>({std::log(3.0), 0.0});
  EXPECT_NEAR(p[0], 0.75, 1e-15);
  EXPECT_NEAR(p[1], 0.25, 1e-15);
}

TEST(SoftmaxTest, ExtremeLogitsStayFinite) {
  const auto p = Softmax<float>({1000.0f, -1000.0f});
  EXPECT_EQ(p[0], 1.0f);
  EXPECT_EQ(p[1], 0.0f);
  const auto q = Softmax<float>({88.0f, 89.0f});
  EXPECT_TRUE(std::isfinite(q[0]) && std::isfinite(q[1]));
}

TEST(SoftmaxTest, NormalizedAndShiftInvariant) {
  SplitMix64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const float a = static_cast<float>(rng.UniformUnit() * 40 - 20);
    const float b = static_cast<float>(rng.UniformUnit() * 40 - 20);
    const float c = static_cast<float>(rng.UniformUnit() * 20 - 10);
    const auto p = Softmax<float>({a, b});
    const auto q = Softmax<float>({a + c, b + c});
    ASSERT_NEAR(p[0] + p[1], 1.0f, 1e-6f);
    ASSERT_NEAR(p[0], q[0], 1e-6f);
    ASSERT_NEAR(p[1], q[1], 1e-6f);
  }
}

TEST(ForwardTest, ZeroParamsGiveUniform) {
  const auto p = ModelParams::Zeros({10, 4, 3});
  const std::vector<NgramId> bag = {1, 2, 9};
  const auto cache = Forward(p, std::span<const NgramId>(bag));
  EXPECT_EQ(cache.p[0], 0.5f);
  EXPECT_EQ(cache.p[1], 0.5f);
}

TEST(ForwardTest, SingleIdPoolsToItsRowAndDuplicatesAgree) {
  const auto p = InitParams<float>({10, 4, 3}, 9);
  const std::vector<NgramId> one = {6};
  const std::vector<NgramId> two = {6, 6};
  const auto c1 = Forward(p, std::span<const NgramId>(one));
  const auto c2 = Forward(p, std::span<const NgramId>(two));
  const auto row = p.EmbeddingRow(6);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(c1.x[k], row[k]);
    EXPECT_EQ(c2.x[k], row[k]);
  }
  EXPECT_EQ(c1.p, c2.p);
}

TEST(ForwardTest, EmptyBagUsesZeroPooledVector) {
  auto p = InitParams<double>({10, 4, 3}, 2);
  p.b1 = {0.3, -0.2, 0.1};
  p.b2 = {0.05, -0.4};
  const auto cache = Forward(p, std::span<const NgramId>{});
  for (double v : cache.x) EXPECT_EQ(v, 0.0);
  std::array<double, 2> z = {p.b2[0], p.b2[1]};
  for (std::size_t j = 0; j < 3; ++j) {
    z[0] += p.w2[j * 2] * std::tanh(p.b1[j]);
    z[1] += p.w2[j * 2 + 1] * std::tanh(p.b1[j]);
  }
  const auto expected = Softmax(z);
  EXPECT_NEAR(cache.p[0], expected[0], 1e-15);
}

TEST(ForwardTest, RejectsOutOfRangeIds) {
  const auto p = InitParams<float>({5, 2, 2}, 1);
  const std::vector<NgramId> bag = {5};
  EXPECT_THROW(Forward(p, std::span<const NgramId>(bag)), std::out_of_range);
}

TEST(ForwardTest, CacheInvariants) {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = InitParams<float>({30, 6, 5}, trial);
    for (auto& v : p.embedding) v *= 20.0f;  // drive tanh into saturation
    const auto bag = RandomBag(rng, 30, 12);
    const auto c = Forward(p, std::span<const NgramId>(bag));
    for (float h : c.h1) ASSERT_TRUE(h >= -1.0f && h <= 1.0f);
    ASSERT_TRUE(c.p[0] >= 0.0f && c.p[1] >= 0.0f);
    ASSERT_NEAR(c.p[0] + c.p[1], 1.0f, 1e-6f);
    for (float v : c.x) ASSERT_TRUE(std::isfinite(v));
  }
}

TEST(CrossEntropyTest, Values) {
  EXPECT_NEAR(CrossEntropy<double>({0.5, 0.5}, 0), std::log(2.0), 1e-15);
  EXPECT_NEAR(CrossEntropy<double>({0.5, 0.5}, 1), 0.693147, 1e-6);
  EXPECT_EQ(CrossEntropy<double>({1.0, 0.0}, 0), 0.0);
  // -ln(1e-12) = 12 ln 10.
  EXPECT_NEAR(CrossEntropy<double>({0.0, 1.0}, 0), 12 * std::log(10.0), 1e-12);
  EXPECT_NEAR(CrossEntropy<double>({0.0, 1.0}, 0), 27.631021, 1e-6);
}

TEST(BackwardTest, PerfectPredictionHasZeroOutputBiasGradient) {
  const auto p = InitParams<double>({4, 3, 2}, 1);
  ForwardCache<double> cache = Forward(p, std::span<const NgramId>{});
  cache.p = {0.0, 1.0};
  const auto g = Backward(p, cache, 1);
  EXPECT_EQ(g.b2[0], 0.0);
  EXPECT_EQ(g.b2[1], 0.0);
}

TEST(BackwardTest, EmptyBagHasNoEmbeddingRows) {
  auto p = InitParams<double>({4, 3, 2}, 1);
  p.b1 = {0.5, -0.5};
  const auto cache = Forward(p, std::span<const NgramId>{});
  const auto g = Backward(p, cache, 0);
  EXPECT_TRUE(g.embedding.empty());
  EXPECT_NE(g.b1[0], 0.0);
  for (double v : g.w1) EXPECT_EQ(v, 0.0);  // x = 0
}

TEST(BackwardTest, EmbeddingRowsAreDistinctBagIds) {
  const auto p = InitParams<double>({10, 3, 2}, 5);
  const std::vector<NgramId> bag = {4, 1, 4, 7};
  const auto g = Backward(p, Forward(p, std::span<const NgramId>(bag)), 1);
  EXPECT_EQ(g.embedding.ids(), (std::vector<NgramId>{4, 1, 7}));
  // Row 4 appears twice, so it receives twice row 1's gradient.
  const auto r4 = g.embedding.Find(4);
  const auto r1 = g.embedding.Find(1);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(r4[k], 2 * r1[k], 1e-15);
}

TEST(BackwardTest, MatchesFiniteDifferences) {
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const ModelDims dims{50, 8, 4};
    auto params = InitParams<double>(dims, 1000 + trial);
    for (auto& v : params.b1) v = rng.UniformUnit() - 0.5;
    for (auto& v : params.b2) v = rng.UniformUnit() - 0.5;
    const auto bag = RandomBag(rng, 50, 10);
    const int cls = static_cast<int>(rng.UniformInclusive(1));
    const auto cache = Forward(params, std::span<const NgramId>(bag));
    const auto grads = Backward(params, cache, cls);
    const auto check = CheckGradients(params, bag, cls, grads);
    ASSERT_LT(check.max_rel_error, 1e-4) << "trial " << trial;
  }
}

TEST(BackwardTest, ScaledAccumulationIsLinear) {
  const auto p = InitParams<double>({8, 3, 2}, 3);
  const std::vector<NgramId> a = {1, 2}, b = {2, 5, 5};
  auto acc = Gradients<double>::Zeros(p.dims);
  AccumulateBackward(p, Forward(p, std::span<const NgramId>(a)), 0, 0.5, acc);
  AccumulateBackward(p, Forward(p, std::span<const NgramId>(b)), 1, 0.5, acc);
  const auto ga = Backward(p, Forward(p, std::span<const NgramId>(a)), 0);
  const auto gb = Backward(p, Forward(p, std::span<const NgramId>(b)), 1);
  for (std::size_t i = 0; i < acc.w1.size(); ++i) {
    EXPECT_NEAR(acc.w1[i], 0.5 * (ga.w1[i] + gb.w1[i]), 1e-15);
  }
  const auto row2 = acc.embedding.Find(2);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(row2[k], 0.5 * (ga.embedding.Find(2)[k] + gb.embedding.Find(2)[k]),
                1e-15);
  }
}

TEST(PredictClassTest, TieGoesToPositive) {
  EXPECT_EQ(PredictClass<float>({0.5f, 0.5f}), 1);
  EXPECT_EQ(PredictClass<float>({0.6f, 0.4f}), 0);
  EXPECT_EQ(ClassToLabel(0), -1);
  EXPECT_EQ(LabelToClass(-1), 0);
  EXPECT_EQ(LabelToClass(1), 1);
}

}  // namespace
}  // namespace ngramsent
