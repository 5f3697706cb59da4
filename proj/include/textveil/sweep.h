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

// Privacy/utility sweeps: transform, train, and score a corpus for every
// (tier set, noise rate) pair.

#ifndef TEXTVEIL_SWEEP_H_
#define TEXTVEIL_SWEEP_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "textveil/corpus.h"
#include "textveil/eval.h"
#include "textveil/pipeline.h"

namespace textveil {

using TierSet = std::set<Tier>;

// "none", "bt", "ner", "dp", "combined" (all three), or tier names joined
// with '+', e.g. "bt+dp".
absl::StatusOr<TierSet> ParseTierSet(std::string_view name);
std::string TierSetName(const TierSet& tiers);  // "none", "dp", "bt+ner+dp"

// Row label, e.g. "Direct Fine-tune", "NER Masking", "DP (noise = 0.05)".
std::string ProcedureName(const TierSet& tiers, double rate);

struct SweepRow {
  std::string procedure;
  std::string tier_set;
  double noise_rate = 0.0;
  double dev_f1 = 0.0;
  double test_f1 = 0.0;
  double entity_exposure = 0.0;
  double label_flip_fraction = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepOptions {
  std::vector<double> rates = {0.05, 0.10, 0.15, 0.20};
  // Rows come out in this order. A set without DP yields one row (rate 0);
  // a set with DP yields one row per rate.
  std::vector<TierSet> tier_sets;
  uint64_t seed = 0;
  // Everything except tiers, noise rate and seed is taken from here.
  TransformConfig base;
  TrainOptions train;
};

// The baseline, BT-only and NER-only rows followed by `swept` at every rate.
std::vector<TierSet> WithReferenceRows(std::span<const TierSet> swept);

absl::StatusOr<std::vector<SweepRow>> RunSweep(const SplitCorpus& corpus,
                                               const SweepOptions& options,
                                               int workers = 1);

std::string SweepToCsv(std::span<const SweepRow> rows);
absl::StatusOr<std::vector<SweepRow>> ParseSweepCsv(std::string_view csv);
std::string RenderTable(std::span<const SweepRow> rows);

}  // namespace textveil

#endif  // TEXTVEIL_SWEEP_H_
