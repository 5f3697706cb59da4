//
// Copyright 2026 The Textveil Authors
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
//

#include "textveil/eval.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "textveil/backtranslation.h"
#include "textveil/io.h"
#include "textveil/parallel.h"
#include "textveil/rng.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

constexpr std::string_view kModelMagic = "TVLR";

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void PutU32(uint32_t v, std::string* out) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

uint32_t GetU32(std::string_view bytes, size_t at) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= uint32_t{static_cast<unsigned char>(bytes[at + i])} << (8 * i);
  }
  return v;
}

using OccurrenceMap =
    std::unordered_map<std::string, std::vector<size_t>>;  // id -> entries

}  // namespace

SparseVector Featurize(std::string_view text) {
  const std::string lower = utf8::AsciiLower(text);
  const std::vector<utf8::CodePoint> chars = utf8::Decode(lower);
  std::vector<uint32_t> buckets;
  for (int n = kMinOrder; n <= kMaxOrder; ++n) {
    for (size_t i = 0; i + n <= chars.size(); ++i) {
      const size_t begin = chars[i].offset;
      const size_t end = chars[i + n - 1].offset + chars[i + n - 1].length;
      buckets.push_back(static_cast<uint32_t>(
          Fnv1a64(std::string_view(lower).substr(begin, end - begin)) &
          (kNumBuckets - 1)));
    }
  }
  std::sort(buckets.begin(), buckets.end());
  SparseVector x;
  for (uint32_t b : buckets) {
    if (!x.empty() && x.back().first == b) {
      x.back().second += 1.0f;
    } else {
      x.emplace_back(b, 1.0f);
    }
  }
  return x;
}

double Model::Score(const SparseVector& x) const {
  double z = bias;
  for (const auto& [bucket, count] : x) z += double{weights[bucket]} * count;
  return z;
}

std::vector<FeaturizedExample> FeaturizeAll(
    std::span<const LabeledExample> examples, int workers) {
  std::vector<FeaturizedExample> out(examples.size());
  ParallelFor(examples.size(), workers, [&](size_t i) {
    out[i] = {Featurize(examples[i].text), LabelValue(examples[i].label)};
  });
  return out;
}

absl::StatusOr<Model> Train(std::span<const LabeledExample> examples,
                            uint64_t seed, const TrainOptions& options,
                            int workers) {
  const std::vector<FeaturizedExample> data = FeaturizeAll(examples, workers);
  return Train(data, seed, options);
}

absl::StatusOr<Model> Train(std::span<const FeaturizedExample> data,
                            uint64_t seed, const TrainOptions& options) {
  if (data.empty()) {
    return absl::InvalidArgumentError("training set is empty");
  }
  const bool has_negative = std::any_of(
      data.begin(), data.end(), [](const auto& e) { return e.y == 0; });
  const bool has_positive = std::any_of(
      data.begin(), data.end(), [](const auto& e) { return e.y == 1; });
  if (!has_negative || !has_positive) {
    return absl::InvalidArgumentError(
        "training set must contain both labels");
  }
  if (options.epochs < 1 || !(options.learning_rate > 0)) {
    return absl::InvalidArgumentError(
        "epochs must be >= 1 and learning rate > 0");
  }

  Model model;
  std::vector<size_t> order(data.size());
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    RngStream stream =
        DeriveStream(seed, std::to_string(epoch), StreamTag::kTrain);
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[*stream.UniformBelow(i)]);
    }
    for (size_t i : order) {
      const FeaturizedExample& example = data[i];
      const double g = Sigmoid(model.Score(example.x)) - example.y;
      const double step = options.learning_rate * g;
      for (const auto& [bucket, count] : example.x) {
        model.weights[bucket] =
            static_cast<float>(model.weights[bucket] - step * count);
      }
      model.bias = static_cast<float>(model.bias - step);
    }
  }
  return model;
}

double MeanLoss(const Model& model, std::span<const FeaturizedExample> data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const FeaturizedExample& example : data) {
    const double z = model.Score(example.x);
    total += example.y == 1 ? Softplus(-z) : Softplus(z);
  }
  return total / data.size();
}

std::vector<double> MeanGradient(const Model& model,
                                 std::span<const FeaturizedExample> data) {
  std::vector<double> grad(kNumBuckets + 1, 0.0);
  if (data.empty()) return grad;
  for (const FeaturizedExample& example : data) {
    const double g = Sigmoid(model.Score(example.x)) - example.y;
    for (const auto& [bucket, count] : example.x) grad[bucket] += g * count;
    grad[kNumBuckets] += g;
  }
  for (double& v : grad) v /= data.size();
  return grad;
}

Metrics Metrics::FromCounts(uint64_t tp, uint64_t fp, uint64_t fn,
                            uint64_t tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / (tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / (tp + fn);
  if (2 * tp + fp + fn > 0) {
    m.f1 = 2.0 * tp / static_cast<double>(2 * tp + fp + fn);
  }
  return m;
}

Metrics Evaluate(const Model& model, std::span<const LabeledExample> examples,
                 int workers) {
  std::vector<char> predicted(examples.size());
  ParallelFor(examples.size(), workers, [&](size_t i) {
    predicted[i] = model.Predict(Featurize(examples[i].text));
  });
  uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < examples.size(); ++i) {
    const bool gold = examples[i].label == Label::kPropaganda;
    if (predicted[i]) {
      ++(gold ? tp : fp);
    } else {
      ++(gold ? fn : tn);
    }
  }
  return Metrics::FromCounts(tp, fp, fn, tn);
}

std::string SerializeModel(const Model& model) {
  std::string out(kModelMagic);
  out.reserve(12 + 4 * model.weights.size());
  PutU32(static_cast<uint32_t>(model.weights.size()), &out);
  PutU32(std::bit_cast<uint32_t>(model.bias), &out);
  for (float w : model.weights) PutU32(std::bit_cast<uint32_t>(w), &out);
  return out;
}

absl::StatusOr<Model> ParseModel(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != kModelMagic) {
    return absl::InvalidArgumentError("not a model file");
  }
  const uint32_t buckets = GetU32(bytes, 4);
  if (buckets != kNumBuckets) {
    return absl::InvalidArgumentError(absl::StrCat(
        "model has ", buckets, " buckets, expected ", kNumBuckets));
  }
  if (bytes.size() != 12 + size_t{4} * buckets) {
    return absl::InvalidArgumentError("model file is truncated");
  }
  Model model;
  model.bias = std::bit_cast<float>(GetU32(bytes, 8));
  for (uint32_t i = 0; i < buckets; ++i) {
    model.weights[i] = std::bit_cast<float>(GetU32(bytes, 12 + 4 * i));
  }
  return model;
}

absl::Status SaveModel(const std::filesystem::path& path, const Model& model) {
  return WriteFile(path, SerializeModel(model));
}

absl::StatusOr<Model> LoadModel(const std::filesystem::path& path) {
  absl::StatusOr<std::string> bytes = ReadFile(path);
  if (!bytes.ok()) return bytes.status();
  absl::StatusOr<Model> model = ParseModel(*bytes);
  if (!model.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": ", model.status().message()));
  }
  return model;
}

absl::StatusOr<double> EntityExposure(
    std::span<const LabeledExample> original,
    std::span<const LabeledExample> transformed, const Gazetteer& gazetteer) {
  OccurrenceMap before;
  uint64_t total = 0;
  for (const LabeledExample& example : original) {
    std::vector<size_t>& entries = before[example.id];
    entries = OccurringEntries(example.text, gazetteer);
    total += entries.size();
  }
  // An original occurrence is exposed if any transformed copy still shows it.
  std::set<std::pair<std::string, size_t>> exposed;
  for (const LabeledExample& example : transformed) {
    const std::string source(SourceId(example.id));
    auto it = before.find(source);
    if (it == before.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "transformed example \"", example.id, "\" has no original"));
    }
    if (it->second.empty()) continue;
    const std::vector<size_t> after =
        OccurringEntries(example.text, gazetteer);
    for (size_t entry : it->second) {
      if (std::binary_search(after.begin(), after.end(), entry)) {
        exposed.emplace(source, entry);
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(exposed.size()) / total;
}

absl::StatusOr<double> EntityExposure(const SplitCorpus& original,
                                      const SplitCorpus& transformed,
                                      const Gazetteer& gazetteer) {
  std::vector<LabeledExample> before;
  std::vector<LabeledExample> after;
  for (Split split : kAllSplits) {
    before.insert(before.end(), original.part(split).begin(),
                  original.part(split).end());
    after.insert(after.end(), transformed.part(split).begin(),
                 transformed.part(split).end());
  }
  return EntityExposure(before, after, gazetteer);
}

absl::StatusOr<double> FlipAudit(const SplitCorpus& original,
                                 const SplitCorpus& transformed) {
  std::unordered_map<std::string_view, Label> labels;
  for (const LabeledExample& example : original.train) {
    labels[example.id] = example.label;
  }
  std::unordered_set<std::string_view> seen;
  uint64_t flipped = 0;
  for (const LabeledExample& example : transformed.train) {
    const std::string_view source = SourceId(example.id);
    auto it = labels.find(source);
    if (it == labels.end()) {
      return absl::DataLossError(absl::StrCat(
          "train example \"", example.id, "\" is not in the original"));
    }
    seen.insert(source);
    flipped += it->second != example.label;
  }
  if (seen.size() != labels.size()) {
    return absl::DataLossError(
        "transformed train split is missing original examples");
  }
  if (transformed.train.empty()) return 0.0;
  return static_cast<double>(flipped) / transformed.train.size();
}

}  // namespace textveil
