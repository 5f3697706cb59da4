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

// Back-translation tier. A round trip through a pivot language is simulated
// with a synonym-collapse lexicon: `forward` sends a word to a pivot token
// and `backward` sends the pivot token to one canonical word, so several
// source synonyms come back as the same word.
//
// Lexicon file format:
//   {"name": "xhosa", "forward": {"calling": "xh000", ...},
//    "backward": {"xh000": "call", ...}}

#ifndef TEXTVEIL_BACKTRANSLATION_H_
#define TEXTVEIL_BACKTRANSLATION_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "textveil/audit.h"
#include "textveil/corpus.h"

namespace textveil {

class PivotLexicon {
 public:
  using WordMap = std::map<std::string, std::string, std::less<>>;

  // Validates that forward keys are lowercase ASCII words, every forward
  // value is a backward key, and every canonical word (backward value) is a
  // fixed point: backward[forward[w]] == w.
  static absl::StatusOr<PivotLexicon> Create(std::string name,
                                             WordMap forward,
                                             WordMap backward);

  static absl::StatusOr<PivotLexicon> FromJson(std::string_view contents);
  static absl::StatusOr<PivotLexicon> Load(const std::filesystem::path& path);

  // One of the shipped lexicons: xhosa, twi, lao, pashto, yoruba.
  static absl::StatusOr<PivotLexicon> Builtin(std::string_view name);
  static std::vector<PivotLexicon> AllBuiltins();

  std::string ToJson() const;

  const std::string& name() const { return name_; }
  const WordMap& forward() const { return forward_; }
  const WordMap& backward() const { return backward_; }

  // Canonical word for a lowercase source word, if the lexicon maps it.
  std::optional<std::string_view> Canonical(std::string_view word) const;

 private:
  PivotLexicon() = default;

  std::string name_;
  WordMap forward_;
  WordMap backward_;
};

// Whitespace tokenization; leading and trailing punctuation stays attached
// to its token. Tokens whose core is purely ASCII letters are mapped through
// the lexicon (lowercased lookup, source initial capital re-applied); all
// other tokens pass through. Tokens are rejoined with single spaces.
std::string RoundTrip(std::string_view text, const PivotLexicon& lexicon);

// Translation backend. Implementations must be deterministic for fixed
// inputs within one run and safe to call from several threads.
class Translator {
 public:
  virtual ~Translator() = default;

  virtual absl::StatusOr<std::string> Translate(std::string_view text,
                                                std::string_view source,
                                                std::string_view target) = 0;

  // Source -> pivot -> source. The default chains two Translate calls.
  virtual absl::StatusOr<std::string> RoundTrip(std::string_view text,
                                                std::string_view source,
                                                std::string_view pivot);
};

// Offline translator over a set of lexicons; the source language is
// implicit. Translate(text, source, p) applies lexicon p's forward map and
// Translate(text, p, target) its backward map.
class LexiconTranslator : public Translator {
 public:
  explicit LexiconTranslator(std::vector<PivotLexicon> lexicons);

  absl::StatusOr<std::string> Translate(std::string_view text,
                                        std::string_view source,
                                        std::string_view target) override;
  absl::StatusOr<std::string> RoundTrip(std::string_view text,
                                        std::string_view source,
                                        std::string_view pivot) override;

  const std::vector<PivotLexicon>& lexicons() const { return lexicons_; }

 private:
  const PivotLexicon* Find(std::string_view name) const;

  std::vector<PivotLexicon> lexicons_;
};

enum class BtMode { kReplace, kAugment };

std::string_view BtModeName(BtMode mode);
absl::StatusOr<BtMode> ParseBtMode(std::string_view name);

inline constexpr std::string_view kSourceLanguage = "en";
inline constexpr std::string_view kBtIdSuffix = "#bt-";

struct BackTranslated {
  std::vector<LabeledExample> examples;
  AuditLog audit;
};

// replace: one output, round-tripped through the pivot drawn from the "bt"
// stream of (seed, id). The audit is empty when the text did not change.
// augment: the original followed by one copy per pivot, ids suffixed
// "#bt-<pivot>", one audit record per copy.
absl::StatusOr<BackTranslated> BackTranslateExample(
    const LabeledExample& example, std::span<const PivotLexicon> pivots,
    BtMode mode, uint64_t seed);

absl::StatusOr<BackTranslated> BackTranslateExample(
    const LabeledExample& example, Translator& translator,
    std::span<const std::string> pivots, BtMode mode, uint64_t seed);

// Strips a "#bt-<pivot>" suffix.
std::string_view SourceId(std::string_view id);

}  // namespace textveil

#endif  // TEXTVEIL_BACKTRANSLATION_H_
