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

// A small linear classifier over hashed character n-grams, its metrics, and
// the two privacy probes (entity exposure and measured label flips).
//
// The classifier is a stand-in for fine-tuned transformers. Its absolute
// scores mean nothing; only how they move under each tier does.

#ifndef TEXTVEIL_EVAL_H_
#define TEXTVEIL_EVAL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "textveil/corpus.h"
#include "textveil/ner_mask.h"

namespace textveil {

inline constexpr int kHashBits = 18;
inline constexpr uint32_t kNumBuckets = uint32_t{1} << kHashBits;
inline constexpr int kMinOrder = 3;
inline constexpr int kMaxOrder = 5;

// (bucket, count) pairs sorted by bucket, no duplicates.
using SparseVector = std::vector<std::pair<uint32_t, float>>;

// ASCII-lowercases the text, then hashes every run of 3, 4 and 5 code points
// (FNV-1a-64 of its UTF-8 bytes, low 18 bits).
SparseVector Featurize(std::string_view text);

struct Model {
  std::vector<float> weights = std::vector<float>(kNumBuckets, 0.0f);
  float bias = 0.0f;

  double Score(const SparseVector& x) const;  // w.x + b
  bool Predict(const SparseVector& x) const { return Score(x) >= 0.0; }

  friend bool operator==(const Model&, const Model&) = default;
};

struct TrainOptions {
  int epochs = 3;
  double learning_rate = 0.1;
};

struct FeaturizedExample {
  SparseVector x;
  int y = 0;
};

std::vector<FeaturizedExample> FeaturizeAll(
    std::span<const LabeledExample> examples, int workers = 1);

// Plain SGD on the logistic loss from zero weights. Epoch e visits the
// examples in the order of a Fisher-Yates shuffle drawn from the
// ("<e>", "train") stream of `seed`.
absl::StatusOr<Model> Train(std::span<const LabeledExample> examples,
                            uint64_t seed, const TrainOptions& options = {},
                            int workers = 1);
absl::StatusOr<Model> Train(std::span<const FeaturizedExample> examples,
                            uint64_t seed, const TrainOptions& options = {});

// Mean logistic loss, and its gradient with respect to every weight followed
// by the bias (length kNumBuckets + 1). SGD applies the per-example terms of
// this same gradient.
double MeanLoss(const Model& model, std::span<const FeaturizedExample> data);
std::vector<double> MeanGradient(const Model& model,
                                 std::span<const FeaturizedExample> data);

struct Metrics {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;
  uint64_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Metrics FromCounts(uint64_t tp, uint64_t fp, uint64_t fn,
                            uint64_t tn);
};

Metrics Evaluate(const Model& model, std::span<const LabeledExample> examples,
                 int workers = 1);

// Little-endian: "TVLR" magic, u32 bucket count, f32 bias, f32 weights.
std::string SerializeModel(const Model& model);
absl::StatusOr<Model> ParseModel(std::string_view bytes);
absl::Status SaveModel(const std::filesystem::path& path, const Model& model);
absl::StatusOr<Model> LoadModel(const std::filesystem::path& path);

// Fraction of (example, gazetteer entry) occurrences in `original` that can
// still be found in `transformed`. Transformed ids are mapped back through
// SourceId, so back-translated copies count against their source. 0 when the
// original has no occurrences.
absl::StatusOr<double> EntityExposure(
    std::span<const LabeledExample> original,
    std::span<const LabeledExample> transformed, const Gazetteer& gazetteer);
absl::StatusOr<double> EntityExposure(const SplitCorpus& original,
                                      const SplitCorpus& transformed,
                                      const Gazetteer& gazetteer);

// Fraction of transformed train examples whose label differs from their
// source in `original`. Every id on either side must have a partner.
absl::StatusOr<double> FlipAudit(const SplitCorpus& original,
                                 const SplitCorpus& transformed);

}  // namespace textveil

#endif  // TEXTVEIL_EVAL_H_
