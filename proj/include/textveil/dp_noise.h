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

// Noise tier: random label flips and character-level insert / delete /
// substitute perturbations at a configured rate.
//
// This is a perturbation mechanism, not a calibrated differential-privacy
// mechanism; it makes no (epsilon, delta) guarantee.

#ifndef TEXTVEIL_DP_NOISE_H_
#define TEXTVEIL_DP_NOISE_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "textveil/audit.h"
#include "textveil/corpus.h"
#include "textveil/rng.h"

namespace textveil {

inline constexpr std::u32string_view kAsciiLetters =
    U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

// chars: every character of every selected text is perturbed with
// probability `rate`. examples: a text is selected with probability `rate`
// and, if selected, perturbed per character at `example_char_rate`.
enum class NoiseUnit { kChars, kExamples };

std::string_view NoiseUnitName(NoiseUnit unit);
absl::StatusOr<NoiseUnit> ParseNoiseUnit(std::string_view name);

struct NoiseConfig {
  double rate = 0.05;
  std::u32string alphabet{kAsciiLetters};
  bool flip_labels = true;
  std::set<Split> apply_to = {Split::kTrain};
  NoiseUnit unit = NoiseUnit::kChars;
  double example_char_rate = 0.10;

  absl::Status Validate() const;
};

enum class CharOp { kInsert = 0, kDelete = 1, kSubstitute = 2 };

std::string_view CharOpName(CharOp op);

struct PerturbedText {
  std::string text;
  AuditLog audit;  // "dp-char" records tagged with the caller's id
};

// Walks the characters left to right. Per character: Bernoulli(rate); on
// success an op drawn uniformly from {insert, delete, substitute}; insert
// keeps the character and appends a uniform alphabet character, substitute
// replaces it by one. Fails only on an empty alphabet.
absl::StatusOr<PerturbedText> PerturbChars(std::string_view text,
                                           Probability rate,
                                           std::u32string_view alphabet,
                                           RngStream& stream,
                                           std::string_view id = "");

struct NoisedExamples {
  std::vector<LabeledExample> examples;
  AuditLog audit;
};

// Flips each label with probability `rate`, drawing from the example's
// "dp-label" stream.
NoisedExamples FlipLabels(std::span<const LabeledExample> examples,
                          Probability rate, uint64_t seed);

struct NoisedCorpus {
  SplitCorpus corpus;
  AuditLog audit;
};

// Perturbs the texts of every split in cfg.apply_to and, if
// cfg.flip_labels, flips train labels. Dev and test labels are never
// touched. Per example the char records precede the flip record.
absl::StatusOr<NoisedCorpus> ApplyDp(const SplitCorpus& corpus,
                                     const NoiseConfig& cfg, uint64_t seed,
                                     int workers = 1);

}  // namespace textveil

#endif  // TEXTVEIL_DP_NOISE_H_
