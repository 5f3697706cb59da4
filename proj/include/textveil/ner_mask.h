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

// Entity masking tier: a gazetteer-backed recognizer and the tag
// substitution that replaces every recognized mention with its category tag
// ([PERSON], [ORG], [LOC], [GPE]).
//
// Text is tokenized into maximal runs of characters that are neither
// whitespace nor punctuation. A gazetteer surface matches a token sequence
// when the tokens are equal and the separators between them are equal after
// collapsing whitespace runs to one space, so "New  York" matches "New York"
// but "New-York" does not. At each token the longest matching surface wins;
// scanning is leftmost-first and matches never overlap.

#ifndef TEXTVEIL_NER_MASK_H_
#define TEXTVEIL_NER_MASK_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "textveil/audit.h"
#include "textveil/corpus.h"

namespace textveil {

enum class EntityCategory { kPer, kOrg, kLoc, kGpe };

std::string_view CategoryName(EntityCategory category);  // "PER", ...
absl::StatusOr<EntityCategory> ParseCategory(std::string_view name);
std::string_view MaskTag(EntityCategory category);  // "[PERSON]", ...

struct EntitySpan {
  size_t start = 0;  // byte offset, inclusive
  size_t end = 0;    // byte offset, exclusive
  EntityCategory category = EntityCategory::kPer;
  std::string surface;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// A word token: byte range [begin, end) of the source text.
struct WordToken {
  size_t begin;
  size_t end;
};

std::vector<WordToken> TokenizeWords(std::string_view text);

class Gazetteer {
 public:
  struct Entry {
    std::string surface;
    EntityCategory category;
  };

  // Rejects surfaces that are empty, start or end with a separator, map to
  // two categories, or spell a bare tag name such as "PERSON".
  static absl::StatusOr<Gazetteer> Create(std::vector<Entry> entries,
                                          bool case_sensitive = true);

  // The built-in gazetteer (at least 50 entries per category).
  static absl::StatusOr<Gazetteer> CreateDefault(bool case_sensitive = true);
  static const Gazetteer& Default();

  // One {"surface": ..., "category": ...} object per line.
  static absl::StatusOr<Gazetteer> ParseJsonl(std::string_view contents,
                                              bool case_sensitive = true);
  static absl::StatusOr<Gazetteer> LoadJsonl(const std::filesystem::path& path,
                                             bool case_sensitive = true);
  std::string ToJsonl() const;

  bool case_sensitive() const { return case_sensitive_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Indices of entries matching at token `i`, longest first. When
  // `longest_only` is set at most one index is returned.
  std::vector<size_t> MatchesAt(std::string_view text,
                                std::span<const WordToken> tokens, size_t i,
                                bool longest_only) const;

 private:
  struct Pattern {
    std::vector<std::string> tokens;  // folded if case-insensitive
    std::vector<std::string> gaps;    // normalized separators
    size_t entry;
  };

  Gazetteer() = default;

  std::vector<Entry> entries_;
  bool case_sensitive_ = true;
  // Keyed by the folded first token; each list sorted longest first.
  std::unordered_map<std::string, std::vector<Pattern>> patterns_;
};

// Pluggable recognizer so a learned model can replace the gazetteer.
class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  // Spans must be sorted, non-overlapping and on character boundaries.
  virtual std::vector<EntitySpan> Recognize(std::string_view text) const = 0;
};

class GazetteerRecognizer : public EntityRecognizer {
 public:
  explicit GazetteerRecognizer(const Gazetteer& gazetteer)
      : gazetteer_(&gazetteer) {}
  std::vector<EntitySpan> Recognize(std::string_view text) const override;

 private:
  const Gazetteer* gazetteer_;
};

std::vector<EntitySpan> Recognize(std::string_view text,
                                  const Gazetteer& gazetteer);

// Replaces every span by its tag. Fails on unsorted, overlapping,
// out-of-range or mid-character spans.
absl::StatusOr<std::string> Mask(std::string_view text,
                                 std::span<const EntitySpan> spans);

struct MaskedExample {
  LabeledExample example;
  AuditLog audit;  // one "ner" record per replaced span, left to right
};

MaskedExample MaskExample(const LabeledExample& example,
                          const EntityRecognizer& recognizer);
MaskedExample MaskExample(const LabeledExample& example,
                          const Gazetteer& gazetteer);

// Indices of every gazetteer entry occurring anywhere in `text` as a token
// sequence (not only the leftmost-longest ones), sorted and unique.
std::vector<size_t> OccurringEntries(std::string_view text,
                                     const Gazetteer& gazetteer);

}  // namespace textveil

#endif  // TEXTVEIL_NER_MASK_H_
