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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ngramsent/rng.h"

namespace ngramsent {
namespace {

template <typename T>
void FillGlorot(std::vector<T>& tensor, std::size_t fan_in,
                std::size_t fan_out, SplitMix64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& w : tensor) {
    w = static_cast<T>((2.0 * rng.UniformUnit() - 1.0) * limit);
  }
}

void CheckSize(std::size_t got, std::size_t want, const char* name) {
  if (got != want) {
    throw std::invalid_argument(std::string("tensor ") + name + " has " +
                                std::to_string(got) + " elements, expected " +
                                std::to_string(want));
  }
}

}  // namespace

template <typename T>
BasicModelParams<T> BasicModelParams<T>::Zeros(const ModelDims& dims) {
  BasicModelParams p;
  p.dims = dims;
  p.embedding.assign(dims.vocab_size * dims.embed_dim, T(0));
  p.w1.assign(dims.embed_dim * dims.hidden_dim, T(0));
  p.b1.assign(dims.hidden_dim, T(0));
  p.w2.assign(dims.hidden_dim * kNumClasses, T(0));
  p.b2.assign(kNumClasses, T(0));
  return p;
}

template <typename T>
void BasicModelParams<T>::CheckShapes() const {
  if (dims.embed_dim == 0 || dims.hidden_dim == 0) {
    throw std::invalid_argument("embed_dim and hidden_dim must be >= 1");
  }
  CheckSize(embedding.size(), dims.vocab_size * dims.embed_dim, "E");
  CheckSize(w1.size(), dims.embed_dim * dims.hidden_dim, "W1");
  CheckSize(b1.size(), dims.hidden_dim, "b1");
  CheckSize(w2.size(), dims.hidden_dim * kNumClasses, "W2");
  CheckSize(b2.size(), kNumClasses, "b2");
}

template <typename T>
std::span<T> SparseRowGrad<T>::Row(NgramId id) {
  auto [it, inserted] = slot_.try_emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    values_.resize(values_.size() + width_, T(0));
  }
  return {values_.data() + it->second * width_, width_};
}

template <typename T>
std::span<const T> SparseRowGrad<T>::Find(NgramId id) const {
  const auto it = slot_.find(id);
  if (it == slot_.end()) return {};
  return RowAt(it->second);
}

template <typename T>
void SparseRowGrad<T>::Clear() {
  ids_.clear();
  values_.clear();
  slot_.clear();
}

template <typename T>
Gradients<T> Gradients<T>::Zeros(const ModelDims& dims) {
  Gradients g;
  g.embedding = SparseRowGrad<T>(dims.embed_dim);
  g.w1.assign(dims.embed_dim * dims.hidden_dim, T(0));
  g.b1.assign(dims.hidden_dim, T(0));
  g.w2.assign(dims.hidden_dim * kNumClasses, T(0));
  g.b2.assign(kNumClasses, T(0));
  return g;
}

template <typename T>
void Gradients<T>::Clear() {
  embedding.Clear();
  std::fill(w1.begin(), w1.end(), T(0));
  std::fill(b1.begin(), b1.end(), T(0));
  std::fill(w2.begin(), w2.end(), T(0));
  std::fill(b2.begin(), b2.end(), T(0));
}

template <typename T>
BasicModelParams<T> InitParams(const ModelDims& dims, uint64_t seed) {
  auto p = BasicModelParams<T>::Zeros(dims);
  p.CheckShapes();
  SplitMix64 rng(seed);
  FillGlorot(p.embedding, dims.vocab_size, dims.embed_dim, rng);
  FillGlorot(p.w1, dims.embed_dim, dims.hidden_dim, rng);
  FillGlorot(p.w2, dims.hidden_dim, kNumClasses, rng);
  return p;
}

template <typename T>
std::array<T, kNumClasses> Softmax(const std::array<T, kNumClasses>& z) {
  const T shift = std::max(z[0], z[1]);
  const T e0 = std::exp(z[0] - shift);
  const T e1 = std::exp(z[1] - shift);
  const T sum = e0 + e1;
  return {e0 / sum, e1 / sum};
}

template <typename T>
void Forward(const BasicModelParams<T>& params, std::span<const NgramId> bag,
             ForwardCache<T>& cache) {
  const std::size_t d = params.dims.embed_dim;
  const std::size_t h = params.dims.hidden_dim;
  cache.bag.assign(bag.begin(), bag.end());
  cache.x.assign(d, T(0));
  for (const NgramId id : bag) {
    if (id >= params.dims.vocab_size) {
      throw std::out_of_range("feature id " + std::to_string(id) +
                              " outside vocabulary of size " +
                              std::to_string(params.dims.vocab_size));
    }
    const auto row = params.EmbeddingRow(id);
    for (std::size_t k = 0; k < d; ++k) cache.x[k] += row[k];
  }
  if (!bag.empty()) {
    const T inv = T(1) / static_cast<T>(bag.size());
    for (auto& v : cache.x) v *= inv;
  }

  cache.a1.assign(params.b1.begin(), params.b1.end());
  for (std::size_t k = 0; k < d; ++k) {
    const T xk = cache.x[k];
    const T* w = params.w1.data() + k * h;
    for (std::size_t j = 0; j < h; ++j) cache.a1[j] += w[j] * xk;
  }
  cache.h1.resize(h);
  for (std::size_t j = 0; j < h; ++j) cache.h1[j] = std::tanh(cache.a1[j]);

  cache.z = {params.b2[0], params.b2[1]};
  for (std::size_t j = 0; j < h; ++j) {
    cache.z[0] += params.w2[j * kNumClasses] * cache.h1[j];
    cache.z[1] += params.w2[j * kNumClasses + 1] * cache.h1[j];
  }
  cache.p = Softmax(cache.z);
}

template <typename T>
T CrossEntropy(const std::array<T, kNumClasses>& p, int cls) {
  return -std::log(std::max(p[static_cast<std::size_t>(cls)],
                            static_cast<T>(kLossFloor)));
}

template <typename T>
void AccumulateBackward(const BasicModelParams<T>& params,
                        const ForwardCache<T>& cache, int cls, T scale,
                        Gradients<T>& grads) {
  const std::size_t d = params.dims.embed_dim;
  const std::size_t h = params.dims.hidden_dim;

  std::array<T, kNumClasses> dz = cache.p;
  dz[static_cast<std::size_t>(cls)] -= T(1);

  grads.b2[0] += scale * dz[0];
  grads.b2[1] += scale * dz[1];

  std::vector<T> da1(h);
  for (std::size_t j = 0; j < h; ++j) {
    const T* w = params.w2.data() + j * kNumClasses;
    grads.w2[j * kNumClasses] += scale * cache.h1[j] * dz[0];
    grads.w2[j * kNumClasses + 1] += scale * cache.h1[j] * dz[1];
    const T dh = w[0] * dz[0] + w[1] * dz[1];
    da1[j] = dh * (T(1) - cache.h1[j] * cache.h1[j]);
    grads.b1[j] += scale * da1[j];
  }

  std::vector<T> dx(d, T(0));
  for (std::size_t k = 0; k < d; ++k) {
    const T* w = params.w1.data() + k * h;
    T* gw = grads.w1.data() + k * h;
    const T xk = scale * cache.x[k];
    T acc = T(0);
    for (std::size_t j = 0; j < h; ++j) {
      gw[j] += xk * da1[j];
      acc += w[j] * da1[j];
    }
    dx[k] = acc;
  }

  if (cache.bag.empty()) return;
  // Each occurrence of an id contributes dx / |bag|, so a row receives
  // multiplicity(id) / |bag| * dx.
  std::unordered_map<NgramId, std::size_t> multiplicity;
  std::vector<NgramId> order;
  for (const NgramId id : cache.bag) {
    if (multiplicity[id]++ == 0) order.push_back(id);
  }
  const T inv_len = scale / static_cast<T>(cache.bag.size());
  for (const NgramId id : order) {
    const T coef = static_cast<T>(multiplicity[id]) * inv_len;
    auto row = grads.embedding.Row(id);
    for (std::size_t k = 0; k < d; ++k) row[k] += coef * dx[k];
  }
}

#define NGRAMSENT_INSTANTIATE(T)                                              \
  template struct BasicModelParams<T>;                                        \
  template class SparseRowGrad<T>;                                            \
  template struct Gradients<T>;                                               \
  template BasicModelParams<T> InitParams<T>(const ModelDims&, uint64_t);     \
  template std::array<T, kNumClasses> Softmax<T>(                             \
      const std::array<T, kNumClasses>&);                                     \
  template void Forward<T>(const BasicModelParams<T>&,                        \
                           std::span<const NgramId>, ForwardCache<T>&);       \
  template T CrossEntropy<T>(const std::array<T, kNumClasses>&, int);         \
  template void AccumulateBackward<T>(const BasicModelParams<T>&,             \
                                      const ForwardCache<T>&, int, T,         \
                                      Gradients<T>&);

NGRAMSENT_INSTANTIATE(float)
NGRAMSENT_INSTANTIATE(double)

#undef NGRAMSENT_INSTANTIATE

}  // namespace ngramsent
