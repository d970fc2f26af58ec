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

#include "ngramsent/inference.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ngramsent {

using nlohmann::json;

void Ensemble::Validate() const {
  if (members.empty()) throw std::invalid_argument("ensemble has no members");
  if (dims.vocab_size != vocab.size()) {
    throw std::invalid_argument("ensemble vocab_size " +
                                std::to_string(dims.vocab_size) +
                                " != vocabulary size " +
                                std::to_string(vocab.size()));
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!(members[i].params.dims == dims)) {
      throw std::invalid_argument("member " + std::to_string(i) +
                                  " has different dims");
    }
    members[i].params.CheckShapes();
  }
}

Prediction PredictBag(const Ensemble& ensemble, std::span<const NgramId> bag) {
  if (ensemble.members.empty()) {
    throw std::invalid_argument("ensemble has no members");
  }
  Prediction pred;
  pred.member_ps.reserve(ensemble.members.size());
  ForwardCache<float> cache;
  std::array<float, kNumClasses> sum{};
  for (const auto& member : ensemble.members) {
    Forward(member.params, bag, cache);
    pred.member_ps.push_back(cache.p);
    sum[0] += cache.p[0];
    sum[1] += cache.p[1];
  }
  const auto n = static_cast<float>(ensemble.members.size());
  pred.p = {sum[0] / n, sum[1] / n};
  pred.label = ClassToLabel(PredictClass(pred.p));
  return pred;
}

Prediction Predict(const Ensemble& ensemble, std::string_view text,
                   TokenizerMode mode) {
  const TokenSeq tokens = Tokenize(Normalize(text), mode);
  const FeatureBag bag = Featurize(tokens, ensemble.vocab);
  return PredictBag(ensemble, std::span<const NgramId>(bag.ids));
}

Prediction Predict(const Ensemble& ensemble, std::string_view text) {
  return Predict(ensemble, text, ensemble.tokenizer);
}

namespace {

constexpr const char* kTensorNames[] = {"E", "W1", "b1", "W2", "b2"};

void AppendFloats(const std::vector<float>& values, std::string& out) {
  for (const float f : values) {
    const auto bits = std::bit_cast<uint32_t>(f);
    for (int shift = 0; shift < 32; shift += 8) {
      out.push_back(static_cast<char>((bits >> shift) & 0xFF));
    }
  }
}

float ReadFloat(const char* p) {
  uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    bits |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  }
  return std::bit_cast<float>(bits);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path MemberPath(const std::filesystem::path& dir,
                                 std::size_t i) {
  return dir / ("member_" + std::to_string(i) + ".bin");
}

[[noreturn]] void Corrupt(const std::filesystem::path& dir,
                          const std::string& what) {
  throw std::runtime_error("model " + dir.string() + ": " + what);
}

}  // namespace

std::string EncodeMemberTensors(const ModelParams& params) {
  params.CheckShapes();
  std::string out;
  out.reserve(4 * (params.embedding.size() + params.w1.size() +
                   params.b1.size() + params.w2.size() + params.b2.size()));
  AppendFloats(params.embedding, out);
  AppendFloats(params.w1, out);
  AppendFloats(params.b1, out);
  AppendFloats(params.w2, out);
  AppendFloats(params.b2, out);
  return out;
}

ModelParams DecodeMemberTensors(std::string_view bytes, const ModelDims& dims,
                                std::size_t member_index) {
  ModelParams params = ModelParams::Zeros(dims);
  std::vector<float>* tensors[] = {&params.embedding, &params.w1, &params.b1,
                                   &params.w2, &params.b2};
  std::size_t offset = 0;
  for (std::size_t t = 0; t < std::size(tensors); ++t) {
    std::vector<float>& tensor = *tensors[t];
    if (bytes.size() - offset < 4 * tensor.size()) {
      throw std::runtime_error(std::string("truncated tensor ") +
                               kTensorNames[t] + " in member " +
                               std::to_string(member_index));
    }
    for (auto& v : tensor) {
      v = ReadFloat(bytes.data() + offset);
      offset += 4;
    }
  }
  if (offset != bytes.size()) {
    throw std::runtime_error(std::to_string(bytes.size() - offset) +
                             " trailing bytes in member " +
                             std::to_string(member_index));
  }
  return params;
}

void SaveModel(const Ensemble& ensemble, const std::filesystem::path& dir) {
  ensemble.Validate();
  std::filesystem::create_directories(dir);

  json manifest;
  manifest["format_version"] = kModelFormatVersion;
  manifest["dims"] = {{"vocab_size", ensemble.dims.vocab_size},
                      {"embed_dim", ensemble.dims.embed_dim},
                      {"hidden_dim", ensemble.dims.hidden_dim}};
  manifest["max_n"] = ensemble.vocab.max_n();
  manifest["capacity"] = ensemble.vocab.capacity();
  manifest["tokenizer"] = std::string(TokenizerModeName(ensemble.tokenizer));
  manifest["member_count"] = ensemble.members.size();
  json seeds = json::array();
  json members = json::array();
  for (const auto& m : ensemble.members) {
    seeds.push_back(m.seed);
    json history = json::array();
    for (const auto& r : m.history) {
      history.push_back({{"epoch", r.epoch},
                         {"train_loss", r.train_loss},
                         {"valid_accuracy", r.valid_accuracy}});
    }
    members.push_back(
        {{"seed", m.seed}, {"best_epoch", m.best_epoch}, {"history", history}});
  }
  manifest["seeds"] = seeds;
  manifest["members"] = members;

  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  SaveVocabulary(ensemble.vocab, dir / "vocab.tsv");
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    WriteFile(MemberPath(dir, i),
              EncodeMemberTensors(ensemble.members[i].params));
  }
}

Ensemble LoadModel(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(ReadFile(dir / "manifest.json"));
  } catch (const json::exception& err) {
    Corrupt(dir, std::string("bad manifest.json: ") + err.what());
  }

  Ensemble ensemble;
  std::size_t member_count = 0;
  std::vector<uint64_t> seeds;
  int max_n = 0;
  std::size_t capacity = 0;
  try {
    const int version = manifest.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      Corrupt(dir, "unsupported format_version " + std::to_string(version) +
                       " (expected " + std::to_string(kModelFormatVersion) +
                       ")");
    }
    const json& dims = manifest.at("dims");
    ensemble.dims.vocab_size = dims.at("vocab_size").get<std::size_t>();
    ensemble.dims.embed_dim = dims.at("embed_dim").get<std::size_t>();
    ensemble.dims.hidden_dim = dims.at("hidden_dim").get<std::size_t>();
    max_n = manifest.at("max_n").get<int>();
    capacity = manifest.at("capacity").get<std::size_t>();
    ensemble.tokenizer =
        ParseTokenizerMode(manifest.at("tokenizer").get<std::string>());
    member_count = manifest.at("member_count").get<std::size_t>();
    seeds = manifest.at("seeds").get<std::vector<uint64_t>>();
  } catch (const json::exception& err) {
    Corrupt(dir, std::string("bad manifest field: ") + err.what());
  } catch (const std::invalid_argument& err) {
    Corrupt(dir, err.what());
  }
  if (ensemble.dims.embed_dim == 0 || ensemble.dims.hidden_dim == 0) {
    Corrupt(dir, "embed_dim and hidden_dim must be >= 1");
  }
  if (member_count == 0) Corrupt(dir, "member_count is 0");
  if (seeds.size() != member_count) {
    Corrupt(dir, "seeds has " + std::to_string(seeds.size()) +
                     " entries but member_count is " +
                     std::to_string(member_count));
  }

  ensemble.vocab = LoadVocabulary(dir / "vocab.tsv", max_n, capacity);
  if (ensemble.vocab.size() != ensemble.dims.vocab_size) {
    Corrupt(dir, "vocab.tsv has " + std::to_string(ensemble.vocab.size()) +
                     " entries but dims.vocab_size is " +
                     std::to_string(ensemble.dims.vocab_size));
  }

  const json* members = nullptr;
  if (manifest.contains("members")) {
    members = &manifest["members"];
    if (!members->is_array() || members->size() != member_count) {
      Corrupt(dir, "members does not match member_count");
    }
  }
  ensemble.members.resize(member_count);
  for (std::size_t i = 0; i < member_count; ++i) {
    TrainedModel& m = ensemble.members[i];
    m.seed = seeds[i];
    try {
      m.params = DecodeMemberTensors(ReadFile(MemberPath(dir, i)),
                                     ensemble.dims, i);
    } catch (const std::runtime_error& err) {
      Corrupt(dir, err.what());
    }
    if (members == nullptr) continue;
    try {
      const json& info = (*members)[i];
      if (info.at("seed").get<uint64_t>() != m.seed) {
        Corrupt(dir, "member " + std::to_string(i) + " seed disagrees with seeds");
      }
      m.best_epoch = info.at("best_epoch").get<std::size_t>();
      for (const json& r : info.at("history")) {
        m.history.push_back({r.at("epoch").get<std::size_t>(),
                             r.at("train_loss").get<double>(),
                             r.at("valid_accuracy").get<double>()});
      }
    } catch (const json::exception& err) {
      Corrupt(dir, "member " + std::to_string(i) + ": " + err.what());
    }
  }
  return ensemble;
}

}  // namespace ngramsent
