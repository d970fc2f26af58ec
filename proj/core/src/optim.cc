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

#include "ngramsent/optim.h"

#include <cmath>
#include <stdexcept>

namespace ngramsent {

void AdamHyper::Validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("adam alpha must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("adam betas must lie in [0, 1)");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("adam eps must be > 0");
}

AdamStepScale AdamStepScale::For(const AdamHyper& hyper, uint64_t t) {
  const double td = static_cast<double>(t);
  return {hyper.alpha,
          hyper.beta1,
          hyper.beta2,
          hyper.eps,
          1.0 - std::pow(hyper.beta1, td),
          1.0 - std::pow(hyper.beta2, td)};
}

template <typename T>
void AdamUpdate(std::span<T> theta, std::span<const T> grad, std::span<T> m,
                std::span<T> v, const AdamStepScale& s) {
  if (grad.size() != theta.size() || m.size() != theta.size() ||
      v.size() != theta.size()) {
    throw std::invalid_argument("adam tensor shape mismatch");
  }
  const T b1 = static_cast<T>(s.beta1);
  const T b2 = static_cast<T>(s.beta2);
  const T one_minus_b1 = static_cast<T>(1.0 - s.beta1);
  const T one_minus_b2 = static_cast<T>(1.0 - s.beta2);
  const T c1 = static_cast<T>(s.correction1);
  const T c2 = static_cast<T>(s.correction2);
  const T alpha = static_cast<T>(s.alpha);
  const T eps = static_cast<T>(s.eps);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const T g = grad[i];
    m[i] = b1 * m[i] + one_minus_b1 * g;
    v[i] = b2 * v[i] + one_minus_b2 * g * g;
    const T m_hat = m[i] / c1;
    const T v_hat = v[i] / c2;
    theta[i] -= alpha * m_hat / (std::sqrt(v_hat) + eps);
  }
}

namespace {

template <typename T>
void Dense(std::vector<T>& theta, const std::vector<T>& grad,
           std::vector<T>& m, std::vector<T>& v, const AdamStepScale& s) {
  AdamUpdate(std::span<T>(theta), std::span<const T>(grad), std::span<T>(m),
             std::span<T>(v), s);
}

}  // namespace

template <typename T>
void AdamStep(BasicModelParams<T>& params, const Gradients<T>& grads,
              AdamState<T>& state, const AdamHyper& hyper) {
  params.CheckShapes();
  if (!(state.m.dims == params.dims) || !(state.v.dims == params.dims)) {
    throw std::invalid_argument("adam state built for different dims");
  }
  state.m.CheckShapes();
  state.v.CheckShapes();
  if (grads.w1.size() != params.w1.size() ||
      grads.b1.size() != params.b1.size() ||
      grads.w2.size() != params.w2.size() ||
      grads.b2.size() != params.b2.size() ||
      (!grads.embedding.empty() &&
       grads.embedding.width() != params.dims.embed_dim)) {
    throw std::invalid_argument("gradient shapes do not match parameters");
  }
  for (const NgramId id : grads.embedding.ids()) {
    if (id >= params.dims.vocab_size) {
      throw std::invalid_argument("gradient row outside embedding table");
    }
  }

  ++state.t;
  const AdamStepScale s = AdamStepScale::For(hyper, state.t);
  Dense(params.w1, grads.w1, state.m.w1, state.v.w1, s);
  Dense(params.b1, grads.b1, state.m.b1, state.v.b1, s);
  Dense(params.w2, grads.w2, state.m.w2, state.v.w2, s);
  Dense(params.b2, grads.b2, state.m.b2, state.v.b2, s);
  for (std::size_t i = 0; i < grads.embedding.num_rows(); ++i) {
    const NgramId id = grads.embedding.ids()[i];
    AdamUpdate(params.EmbeddingRow(id), grads.embedding.RowAt(i),
               state.m.EmbeddingRow(id), state.v.EmbeddingRow(id), s);
  }
}

template void AdamUpdate<float>(std::span<float>, std::span<const float>,
                                std::span<float>, std::span<float>,
                                const AdamStepScale&);
template void AdamUpdate<double>(std::span<double>, std::span<const double>,
                                 std::span<double>, std::span<double>,
                                 const AdamStepScale&);
template void AdamStep<float>(ModelParams&, const Gradients<float>&,
                              AdamState<float>&, const AdamHyper&);
template void AdamStep<double>(BasicModelParams<double>&,
                               const Gradients<double>&, AdamState<double>&,
                               const AdamHyper&);

}  // namespace ngramsent
