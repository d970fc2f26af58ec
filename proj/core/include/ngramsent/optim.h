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

#ifndef NGRAMSENT_OPTIM_H_
#define NGRAMSENT_OPTIM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ngramsent/nncore.h"

namespace ngramsent {

// Published Adam defaults.
struct AdamHyper {
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  // Throws std::invalid_argument unless alpha > 0, beta1/beta2 in [0, 1)
  // and eps > 0.
  void Validate() const;
};

// Bias-correction factors for step t (t >= 1).
struct AdamStepScale {
  double alpha;
  double beta1;
  double beta2;
  double eps;
  double correction1;  // 1 - beta1^t
  double correction2;  // 1 - beta2^t

  static AdamStepScale For(const AdamHyper& hyper, uint64_t t);
};

// One Adam update on a flat tensor. m and v are the tensor's moments.
//   m <- b1 m + (1 - b1) g
//   v <- b2 v + (1 - b2) g^2
//   theta <- theta - alpha * (m / c1) / (sqrt(v / c2) + eps)
template <typename T>
void AdamUpdate(std::span<T> theta, std::span<const T> grad, std::span<T> m,
                std::span<T> v, const AdamStepScale& s);

template <typename T>
struct AdamState {
  uint64_t t = 0;
  BasicModelParams<T> m;
  BasicModelParams<T> v;

  static AdamState Fresh(const ModelDims& dims) {
    return {0, BasicModelParams<T>::Zeros(dims),
            BasicModelParams<T>::Zeros(dims)};
  }
};

// Advances `state` by one step and updates `params`. Dense tensors update
// every element. Embedding rows update only if present in grads.embedding;
// other rows keep their (stale) moments untouched. Throws
// std::invalid_argument on any shape mismatch.
template <typename T>
void AdamStep(BasicModelParams<T>& params, const Gradients<T>& grads,
              AdamState<T>& state, const AdamHyper& hyper);

}  // namespace ngramsent

#endif  // NGRAMSENT_OPTIM_H_
