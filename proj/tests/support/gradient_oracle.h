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

#ifndef NGRAMSENT_TESTS_SUPPORT_GRADIENT_ORACLE_H_
#define NGRAMSENT_TESTS_SUPPORT_GRADIENT_ORACLE_H_

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "ngramsent/nncore.h"

namespace ngramsent::testing {

// Reference loss written directly from the model definition with plain
// loops in double precision. Shares no code with nncore's Forward.
inline double ReferenceLoss(const BasicModelParams<double>& p,
                            const std::vector<NgramId>& bag, int cls) {
  const std::size_t d = p.dims.embed_dim, h = p.dims.hidden_dim;
  std::vector<double> x(d, 0.0);
  for (NgramId id : bag) {
    for (std::size_t k = 0; k < d; ++k) x[k] += p.embedding[id * d + k];
  }
  if (!bag.empty()) {
    for (auto& v : x) v /= static_cast<double>(bag.size());
  }
  double z[2] = {p.b2[0], p.b2[1]};
  for (std::size_t j = 0; j < h; ++j) {
    double a = p.b1[j];
    for (std::size_t k = 0; k < d; ++k) a += p.w1[k * h + j] * x[k];
    const double t = std::tanh(a);
    z[0] += p.w2[j * 2] * t;
    z[1] += p.w2[j * 2 + 1] * t;
  }
  const double m = std::max(z[0], z[1]);
  const double lse = m + std::log(std::exp(z[0] - m) + std::exp(z[1] - m));
  return lse - z[cls];
}

struct GradCheckResult {
  std::size_t entries = 0;
  double max_rel_error = 0.0;
};

// Relative error |a - n| / max(1e-8, |a| + |n|) wards off 0/0 for entries
// whose true gradient is zero.
inline double RelativeError(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max(1e-8, std::abs(analytic) + std::abs(numeric));
}

// Central differences with step `h` on every parameter entry, compared to
// the analytical gradient `grads`.
inline GradCheckResult CheckGradients(BasicModelParams<double> params,
                                      const std::vector<NgramId>& bag, int cls,
                                      const Gradients<double>& grads,
                                      double step = 1e-5) {
  GradCheckResult result;
  auto probe = [&](std::vector<double>& tensor, std::size_t i,
                   double analytic) {
    const double saved = tensor[i];
    tensor[i] = saved + step;
    const double up = ReferenceLoss(params, bag, cls);
    tensor[i] = saved - step;
    const double down = ReferenceLoss(params, bag, cls);
    tensor[i] = saved;
    const double numeric = (up - down) / (2 * step);
    result.max_rel_error =
        std::max(result.max_rel_error, RelativeError(analytic, numeric));
    ++result.entries;
  };
  const std::size_t d = params.dims.embed_dim;
  for (std::size_t i = 0; i < params.embedding.size(); ++i) {
    const auto row = grads.embedding.Find(static_cast<NgramId>(i / d));
    probe(params.embedding, i, row.empty() ? 0.0 : row[i % d]);
  }
  for (std::size_t i = 0; i < params.w1.size(); ++i) probe(params.w1, i, grads.w1[i]);
  for (std::size_t i = 0; i < params.b1.size(); ++i) probe(params.b1, i, grads.b1[i]);
  for (std::size_t i = 0; i < params.w2.size(); ++i) probe(params.w2, i, grads.w2[i]);
  for (std::size_t i = 0; i < params.b2.size(); ++i) probe(params.b2, i, grads.b2[i]);
  return result;
}

}  // namespace ngramsent::testing

#endif  // NGRAMSENT_TESTS_SUPPORT_GRADIENT_ORACLE_H_
