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

// Tier composition. Enabled tiers always run as back-translation, then
// entity masking, then noise, whatever order the config lists them in:
// masking must see clean entity names, and back-translating masked text
// would translate the tags.
//
// Config file (all sections optional except where noted):
//   {
//     "tiers": ["BT", "NER", "DP"],
//     "noise": {"rate": 0.05, "unit": "chars", "apply_to": ["train"],
//               "flip_labels": true, "example_char_rate": 0.1,
//               "alphabet": "abc..."},
//     "bt": {"mode": "replace", "pivots": ["xhosa", "lexicons/x.json"],
//            "apply_to": ["train"], "translator": "lexicon",
//            "remote": {"url": "http://host:port", "timeout_ms": 10000,
//                       "retries": 2, "cache": "bt-cache.jsonl"}},
//     "ner": {"gazetteer": "default", "case_sensitive": true,
//             "apply_to": ["train", "dev", "test"]},
//     "seed": 42
//   }
// Pivots are built-in lexicon names or paths to lexicon files; relative
// paths resolve against the config file's directory.

#ifndef TEXTVEIL_PIPELINE_H_
#define TEXTVEIL_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "textveil/audit.h"
#include "textveil/backtranslation.h"
#include "textveil/corpus.h"
#include "textveil/dp_noise.h"
#include "textveil/ner_mask.h"
#include "textveil/remote_translator.h"

namespace textveil {

// Declaration order is execution order.
enum class Tier { kBt, kNer, kDp };

std::string_view TierName(Tier tier);  // "BT", "NER", "DP"
absl::StatusOr<Tier> ParseTier(std::string_view name);  // case-insensitive

struct TransformConfig {
  std::set<Tier> tiers;
  NoiseConfig noise;
  BtMode bt_mode = BtMode::kReplace;
  std::vector<std::string> pivots;  // defaults to the five built-ins
  std::set<Split> bt_apply_to = {Split::kTrain};
  std::optional<RemoteTranslatorOptions> remote;
  std::string gazetteer = "default";
  bool case_sensitive = true;
  std::set<Split> ner_apply_to = {Split::kTrain, Split::kDev, Split::kTest};
  uint64_t seed = 0;
  // Directory that relative resource paths resolve against.
  std::filesystem::path base_dir;

  TransformConfig();

  static absl::StatusOr<TransformConfig> FromJson(
      const nlohmann::json& json, const std::filesystem::path& base_dir = {});
  static absl::StatusOr<TransformConfig> Load(
      const std::filesystem::path& path);

  absl::Status Validate() const;

  // Normalized form: tiers in execution order, every field explicit.
  nlohmann::json ToJson() const;
  // FNV-1a-64 of ToJson().dump().
  uint64_t Hash() const;
};

// Lexicons, gazetteer and translator resolved from a config.
struct TransformResources {
  Gazetteer gazetteer;
  std::unique_ptr<Translator> translator;
  std::vector<std::string> pivot_names;
};

// Loads every resource the enabled tiers need, so that a missing file is
// reported before anything is transformed.
absl::StatusOr<TransformResources> LoadResources(const TransformConfig& cfg);

struct TransformResult {
  SplitCorpus corpus;
  AuditLog audit;
  nlohmann::json manifest;
};

absl::StatusOr<TransformResult> RunPipeline(const SplitCorpus& corpus,
                                            const TransformConfig& cfg,
                                            int workers = 1);
absl::StatusOr<TransformResult> RunPipeline(const SplitCorpus& corpus,
                                            const TransformConfig& cfg,
                                            TransformResources& resources,
                                            int workers = 1);

// Rebuilds a transformed corpus from its input and audit log without
// drawing any random numbers. Records are applied tier by tier (bt, ner,
// then dp-char/dp-label). A record that does not fit the corpus is a
// kDataLoss error naming the record.
absl::StatusOr<SplitCorpus> Replay(const SplitCorpus& input,
                                   std::span<const AuditRecord> audit);

// Writes corpus files, audit.jsonl and manifest.json into `dir`.
absl::Status SaveTransformResult(const std::filesystem::path& dir,
                                 const TransformResult& result);

}  // namespace textveil

#endif  // TEXTVEIL_PIPELINE_H_
