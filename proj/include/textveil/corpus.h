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

// Labeled corpora: JSON Lines I/O, validation, train/dev/test splitting and
// the synthetic corpus generator.
//
// Corpus line format (UTF-8, one object per line):
//   {"id": "7", "text": "hello", "label": 0}
// "id" is optional on input and defaults to the 0-based line number. Keys
// other than id/text/label are carried through unchanged.
//
// A split corpus directory holds train.jsonl, dev.jsonl, test.jsonl and
// manifest.json.

#ifndef TEXTVEIL_CORPUS_H_
#define TEXTVEIL_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace textveil {

enum class Label : uint8_t { kNonPropaganda = 0, kPropaganda = 1 };

constexpr Label Flipped(Label label) {
  return label == Label::kPropaganda ? Label::kNonPropaganda
                                     : Label::kPropaganda;
}
constexpr int LabelValue(Label label) { return static_cast<int>(label); }

struct LabeledExample {
  std::string id;
  std::string text;
  Label label = Label::kNonPropaganda;
  // Unknown keys from the input line; always a JSON object.
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const LabeledExample&,
                         const LabeledExample&) = default;
};

enum class Split { kTrain, kDev, kTest };

inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kDev,
                                                    Split::kTest};

std::string_view SplitName(Split split);
absl::StatusOr<Split> ParseSplit(std::string_view name);

class SplitRatios {
 public:
  // Fractions must be non-negative and sum to 1 within 1e-9.
  static absl::StatusOr<SplitRatios> Create(double train, double dev,
                                            double test);

  SplitRatios() = default;

  double train() const { return values_[0]; }
  double dev() const { return values_[1]; }
  double test() const { return values_[2]; }
  const std::array<double, 3>& values() const { return values_; }

  friend bool operator==(const SplitRatios&, const SplitRatios&) = default;

 private:
  explicit SplitRatios(std::array<double, 3> values) : values_(values) {}
  std::array<double, 3> values_ = {0.6, 0.2, 0.2};
};

struct SplitCorpus {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> dev;
  std::vector<LabeledExample> test;
  SplitRatios ratios;
  uint64_t split_seed = 0;

  std::vector<LabeledExample>& part(Split split);
  const std::vector<LabeledExample>& part(Split split) const;
  size_t size() const { return train.size() + dev.size() + test.size(); }

  friend bool operator==(const SplitCorpus&, const SplitCorpus&) = default;
};

// Checks labels, id uniqueness and that every text has non-whitespace
// content.
absl::Status ValidateExamples(std::span<const LabeledExample> examples);

absl::StatusOr<std::vector<LabeledExample>> ParseJsonl(
    std::string_view contents);
absl::StatusOr<std::vector<LabeledExample>> LoadJsonl(
    const std::filesystem::path& path);

std::string ExampleToJsonLine(const LabeledExample& example);
std::string SerializeJsonl(std::span<const LabeledExample> examples);
absl::Status SaveJsonl(const std::filesystem::path& path,
                       std::span<const LabeledExample> examples);

// Fisher-Yates shuffle driven by the "split" stream of `seed`, then cut into
// floor(train*N), floor(dev*N) and the remainder.
absl::StatusOr<SplitCorpus> SplitExamples(std::vector<LabeledExample> corpus,
                                          const SplitRatios& ratios,
                                          uint64_t seed);

// Content digest over the serialized train, dev and test parts.
uint64_t CorpusDigest(const SplitCorpus& corpus);

// Writes the three parts and a manifest. `manifest_extra` keys are merged
// into the manifest, which always carries ratios, seed, counts and digest.
absl::Status SaveSplitCorpus(const std::filesystem::path& dir,
                             const SplitCorpus& corpus,
                             const nlohmann::json& manifest_extra = {});

absl::StatusOr<SplitCorpus> LoadSplitCorpus(const std::filesystem::path& dir);

// Reads <dir>/manifest.json.
absl::StatusOr<nlohmann::json> LoadManifest(const std::filesystem::path& dir);

// Desk-scale labeled corpus. Positive texts carry two to four persuasion
// markers; negative texts only neutral vocabulary. Roughly 30% of texts in
// either class mention one entity from the default gazetteer.
absl::StatusOr<std::vector<LabeledExample>> GenerateSynthetic(size_t n,
                                                              uint64_t seed);

}  // namespace textveil

#endif  // TEXTVEIL_CORPUS_H_
