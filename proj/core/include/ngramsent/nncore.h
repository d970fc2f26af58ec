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

#ifndef NGRAMSENT_NNCORE_H_
#define NGRAMSENT_NNCORE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "ngramsent/vocab.h"

namespace ngramsent {

inline constexpr std::size_t kNumClasses = 2;

// Class index used inside the network: label -1 is class 0, +1 is class 1.
inline constexpr int LabelToClass(int label) { return label > 0 ? 1 : 0; }
inline constexpr int ClassToLabel(int cls) { return cls == 1 ? 1 : -1; }

struct ModelDims {
  static constexpr std::size_t kDefaultEmbedDim = 32;
  static constexpr std::size_t kDefaultHiddenDim = 32;

  std::size_t vocab_size = 0;
  std::size_t embed_dim = kDefaultEmbedDim;
  std::size_t hidden_dim = kDefaultHiddenDim;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

// Learnable tensors of one classifier, all row-major:
//   embedding  V x d
//   w1         d x h   (hidden pre-activation a1 = w1^T x + b1)
//   b1         h
//   w2         h x 2   (logits z = w2^T tanh(a1) + b2)
//   b2         2
template <typename T>
struct BasicModelParams {
  ModelDims dims;
  std::vector<T> embedding;
  std::vector<T> w1;
  std::vector<T> b1;
  std::vector<T> w2;
  std::vector<T> b2;

  // Zero-filled tensors of the right shapes.
  static BasicModelParams Zeros(const ModelDims& dims);

  std::span<const T> EmbeddingRow(NgramId id) const {
    return {embedding.data() + static_cast<std::size_t>(id) * dims.embed_dim,
            dims.embed_dim};
  }
  std::span<T> EmbeddingRow(NgramId id) {
    return {embedding.data() + static_cast<std::size_t>(id) * dims.embed_dim,
            dims.embed_dim};
  }

  // Throws std::invalid_argument if a tensor does not match `dims`.
  void CheckShapes() const;

  friend bool operator==(const BasicModelParams&,
                         const BasicModelParams&) = default;
};

using ModelParams = BasicModelParams<float>;

template <typename To, typename From>
BasicModelParams<To> ConvertParams(const BasicModelParams<From>& from) {
  auto cast = [](const std::vector<From>& v) {
    return std::vector<To>(v.begin(), v.end());
  };
  return {from.dims,  cast(from.embedding), cast(from.w1),
          cast(from.b1), cast(from.w2),     cast(from.b2)};
}

template <typename T>
struct ForwardCache {
  std::vector<NgramId> bag;
  std::vector<T> x;   // pooled embedding, d
  std::vector<T> a1;  // hidden pre-activation, h
  std::vector<T> h1;  // tanh(a1), h
  std::array<T, kNumClasses> z{};
  std::array<T, kNumClasses> p{};
};

// Embedding-row gradients for the ids a batch touched, in first-touch order.
template <typename T>
class SparseRowGrad {
 public:
  explicit SparseRowGrad(std::size_t width = 0) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t num_rows() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<NgramId>& ids() const { return ids_; }
  bool Contains(NgramId id) const { return slot_.count(id) != 0; }

  std::span<const T> RowAt(std::size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  // Row for `id`, zero-initialized on first access.
  std::span<T> Row(NgramId id);
  // Row for `id` or an empty span if the id was never touched.
  std::span<const T> Find(NgramId id) const;

  void Clear();

 private:
  std::size_t width_;
  std::vector<NgramId> ids_;
  std::vector<T> values_;
  std::unordered_map<NgramId, std::size_t> slot_;
};

template <typename T>
struct Gradients {
  SparseRowGrad<T> embedding;
  std::vector<T> w1;
  std::vector<T> b1;
  std::vector<T> w2;
  std::vector<T> b2;

  static Gradients Zeros(const ModelDims& dims);
  void Clear();
};

// Glorot-uniform embedding, w1 and w2 (filled in that order from one
// splitmix64 stream seeded with `seed`); zero biases.
template <typename T>
BasicModelParams<T> InitParams(const ModelDims& dims, uint64_t seed);

template <typename T>
std::array<T, kNumClasses> Softmax(const std::array<T, kNumClasses>& z);

// Throws std::out_of_range for an id >= vocab_size. An empty bag pools to
// the zero vector.
template <typename T>
void Forward(const BasicModelParams<T>& params, std::span<const NgramId> bag,
             ForwardCache<T>& cache);

template <typename T>
ForwardCache<T> Forward(const BasicModelParams<T>& params,
                        std::span<const NgramId> bag) {
  ForwardCache<T> cache;
  Forward(params, bag, cache);
  return cache;
}

inline constexpr double kLossFloor = 1e-12;

template <typename T>
T CrossEntropy(const std::array<T, kNumClasses>& p, int cls);

// Adds scale * d loss / d params for one example into `grads`.
template <typename T>
void AccumulateBackward(const BasicModelParams<T>& params,
                        const ForwardCache<T>& cache, int cls, T scale,
                        Gradients<T>& grads);

template <typename T>
Gradients<T> Backward(const BasicModelParams<T>& params,
                      const ForwardCache<T>& cache, int cls) {
  Gradients<T> grads = Gradients<T>::Zeros(params.dims);
  AccumulateBackward(params, cache, cls, T(1), grads);
  return grads;
}

// argmax over the two classes; a tie goes to class 1.
template <typename T>
int PredictClass(const std::array<T, kNumClasses>& p) {
  return p[1] >= p[0] ? 1 : 0;
}

}  // namespace ngramsent

#endif  // NGRAMSENT_NNCORE_H_
