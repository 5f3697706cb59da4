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

#include "textveil/ner_mask.h"

#include <algorithm>
#include <array>
#include <utility>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "textveil/io.h"
#include "textveil/resources.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

struct CategoryInfo {
  EntityCategory category;
  std::string_view name;
  std::string_view tag;
};

constexpr std::array<CategoryInfo, 4> kCategories = {{
    {EntityCategory::kPer, "PER", "[PERSON]"},
    {EntityCategory::kOrg, "ORG", "[ORG]"},
    {EntityCategory::kLoc, "LOC", "[LOC]"},
    {EntityCategory::kGpe, "GPE", "[GPE]"},
}};

constexpr std::string_view kTagWords[] = {"person", "org", "loc", "gpe"};

// Collapses whitespace runs to a single space; other characters are kept.
std::string NormalizeGap(std::string_view gap) {
  std::string out;
  bool in_space = false;
  for (const utf8::CodePoint& cp : utf8::Decode(gap)) {
    if (utf8::IsWhitespace(cp.value)) {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out.append(gap.substr(cp.offset, cp.length));
      in_space = false;
    }
  }
  return out;
}

std::string Fold(std::string_view token, bool case_sensitive) {
  return case_sensitive ? std::string(token) : utf8::AsciiLower(token);
}

}  // namespace

std::string_view CategoryName(EntityCategory category) {
  for (const CategoryInfo& info : kCategories) {
    if (info.category == category) return info.name;
  }
  return "";
}

absl::StatusOr<EntityCategory> ParseCategory(std::string_view name) {
  for (const CategoryInfo& info : kCategories) {
    if (info.name == name) return info.category;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown entity category \"", AsAbsl(name), "\" (expected PER|ORG|LOC|GPE)"));
}

std::string_view MaskTag(EntityCategory category) {
  for (const CategoryInfo& info : kCategories) {
    if (info.category == category) return info.tag;
  }
  return "";
}

std::vector<WordToken> TokenizeWords(std::string_view text) {
  std::vector<WordToken> tokens;
  bool in_token = false;
  size_t begin = 0;
  for (const utf8::CodePoint& cp : utf8::Decode(text)) {
    const bool separator =
        utf8::IsWhitespace(cp.value) || utf8::IsPunctuation(cp.value);
    if (separator && in_token) {
      tokens.push_back({begin, cp.offset});
      in_token = false;
    } else if (!separator && !in_token) {
      begin = cp.offset;
      in_token = true;
    }
  }
  if (in_token) tokens.push_back({begin, text.size()});
  return tokens;
}

absl::StatusOr<Gazetteer> Gazetteer::Create(std::vector<Entry> entries,
                                            bool case_sensitive) {
  Gazetteer gazetteer;
  gazetteer.case_sensitive_ = case_sensitive;
  // Folded surface -> category, to detect conflicting entries.
  std::unordered_map<std::string, EntityCategory> seen;
  for (size_t e = 0; e < entries.size(); ++e) {
    const std::string& surface = entries[e].surface;
    const std::vector<WordToken> tokens = TokenizeWords(surface);
    if (tokens.empty() || tokens.front().begin != 0 ||
        tokens.back().end != surface.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "gazetteer surface \"", surface,
          "\" must start and end with a word character"));
    }
    if (tokens.size() == 1) {
      const std::string lower = utf8::AsciiLower(surface);
      for (std::string_view tag_word : kTagWords) {
        if (lower == tag_word) {
          return absl::InvalidArgumentError(absl::StrCat(
              "gazetteer surface \"", surface, "\" collides with a mask tag"));
        }
      }
    }
    Pattern pattern;
    pattern.entry = e;
    for (size_t t = 0; t < tokens.size(); ++t) {
      pattern.tokens.push_back(Fold(
          std::string_view(surface).substr(tokens[t].begin,
                                           tokens[t].end - tokens[t].begin),
          case_sensitive));
      if (t + 1 < tokens.size()) {
        pattern.gaps.push_back(NormalizeGap(std::string_view(surface).substr(
            tokens[t].end, tokens[t + 1].begin - tokens[t].end)));
      }
    }
    std::string key = Fold(surface, case_sensitive);
    auto [it, inserted] = seen.emplace(key, entries[e].category);
    if (!inserted) {
      if (it->second != entries[e].category) {
        return absl::InvalidArgumentError(absl::StrCat(
            "gazetteer surface \"", AsAbsl(surface), "\" maps to both ",
            AsAbsl(CategoryName(it->second)), " and ",
            AsAbsl(CategoryName(entries[e].category))));
      }
      continue;  // exact duplicate
    }
    gazetteer.patterns_[pattern.tokens.front()].push_back(std::move(pattern));
  }
  gazetteer.entries_ = std::move(entries);
  for (auto& [key, patterns] : gazetteer.patterns_) {
    std::stable_sort(patterns.begin(), patterns.end(),
                     [&](const Pattern& a, const Pattern& b) {
                       if (a.tokens.size() != b.tokens.size()) {
                         return a.tokens.size() > b.tokens.size();
                       }
                       return gazetteer.entries_[a.entry].surface.size() >
                              gazetteer.entries_[b.entry].surface.size();
                     });
  }
  return gazetteer;
}

absl::StatusOr<Gazetteer> Gazetteer::CreateDefault(bool case_sensitive) {
  std::vector<Entry> entries;
  for (const resources::EntityEntry& entry : resources::DefaultEntities()) {
    absl::StatusOr<EntityCategory> category = ParseCategory(entry.category);
    if (!category.ok()) return category.status();
    entries.push_back({std::string(entry.surface), *category});
  }
  return Create(std::move(entries), case_sensitive);
}

const Gazetteer& Gazetteer::Default() {
  static const Gazetteer* const gazetteer =
      new Gazetteer(*CreateDefault(/*case_sensitive=*/true));
  return *gazetteer;
}

absl::StatusOr<Gazetteer> Gazetteer::ParseJsonl(std::string_view contents,
                                                bool case_sensitive) {
  std::vector<Entry> entries;
  size_t pos = 0;
  size_t line_number = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const nlohmann::json object =
        nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (object.is_discarded() || !object.is_object() ||
        !object.contains("surface") || !object["surface"].is_string() ||
        !object.contains("category") || !object["category"].is_string()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "gazetteer line ", line_number,
          ": expected {\"surface\": string, \"category\": string}"));
    }
    absl::StatusOr<EntityCategory> category =
        ParseCategory(object["category"].get<std::string>());
    if (!category.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "gazetteer line ", line_number, ": ", category.status().message()));
    }
    entries.push_back({object["surface"].get<std::string>(), *category});
  }
  return Create(std::move(entries), case_sensitive);
}

absl::StatusOr<Gazetteer> Gazetteer::LoadJsonl(
    const std::filesystem::path& path, bool case_sensitive) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  absl::StatusOr<Gazetteer> gazetteer = ParseJsonl(*contents, case_sensitive);
  if (!gazetteer.ok()) {
    return absl::Status(gazetteer.status().code(),
                        absl::StrCat(path.string(), ": ",
                                     gazetteer.status().message()));
  }
  return gazetteer;
}

std::string Gazetteer::ToJsonl() const {
  std::string out;
  for (const Entry& entry : entries_) {
    nlohmann::ordered_json line;
    line["surface"] = entry.surface;
    line["category"] = CategoryName(entry.category);
    out += line.dump(-1, ' ', /*ensure_ascii=*/false);
    out += '\n';
  }
  return out;
}

std::vector<size_t> Gazetteer::MatchesAt(std::string_view text,
                                         std::span<const WordToken> tokens,
                                         size_t i, bool longest_only) const {
  std::vector<size_t> matches;
  const auto token_text = [&](size_t t) {
    return text.substr(tokens[t].begin, tokens[t].end - tokens[t].begin);
  };
  auto it = patterns_.find(Fold(token_text(i), case_sensitive_));
  if (it == patterns_.end()) return matches;
  for (const Pattern& pattern : it->second) {
    const size_t count = pattern.tokens.size();
    if (i + count > tokens.size()) continue;
    bool ok = true;
    for (size_t k = 1; k < count && ok; ++k) {
      ok = Fold(token_text(i + k), case_sensitive_) == pattern.tokens[k] &&
           NormalizeGap(text.substr(
               tokens[i + k - 1].end,
               tokens[i + k].begin - tokens[i + k - 1].end)) ==
               pattern.gaps[k - 1];
    }
    if (!ok) continue;
    matches.push_back(pattern.entry);
    if (longest_only) break;
  }
  return matches;
}

std::vector<EntitySpan> GazetteerRecognizer::Recognize(
    std::string_view text) const {
  std::vector<EntitySpan> spans;
  const std::vector<WordToken> tokens = TokenizeWords(text);
  size_t i = 0;
  while (i < tokens.size()) {
    const std::vector<size_t> match =
        gazetteer_->MatchesAt(text, tokens, i, /*longest_only=*/true);
    if (match.empty()) {
      ++i;
      continue;
    }
    const Gazetteer::Entry& entry = gazetteer_->entries()[match.front()];
    const size_t count = TokenizeWords(entry.surface).size();
    const size_t start = tokens[i].begin;
    const size_t end = tokens[i + count - 1].end;
    spans.push_back({start, end, entry.category,
                     std::string(text.substr(start, end - start))});
    i += count;
  }
  return spans;
}

std::vector<EntitySpan> Recognize(std::string_view text,
                                  const Gazetteer& gazetteer) {
  return GazetteerRecognizer(gazetteer).Recognize(text);
}

absl::StatusOr<std::string> Mask(std::string_view text,
                                 std::span<const EntitySpan> spans) {
  size_t previous_end = 0;
  for (const EntitySpan& span : spans) {
    if (span.start >= span.end || span.end > text.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "span [", span.start, ", ", span.end, ") out of range for text of ",
          text.size(), " bytes"));
    }
    if (span.start < previous_end) {
      return absl::InvalidArgumentError(absl::StrCat(
          "span [", span.start, ", ", span.end,
          ") overlaps or precedes the previous span"));
    }
    if (!utf8::IsBoundary(text, span.start) ||
        !utf8::IsBoundary(text, span.end)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "span [", span.start, ", ", span.end,
          ") splits a UTF-8 character"));
    }
    previous_end = span.end;
  }
  std::string out(text);
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    out.replace(it->start, it->end - it->start, MaskTag(it->category));
  }
  return out;
}

MaskedExample MaskExample(const LabeledExample& example,
                          const EntityRecognizer& recognizer) {
  MaskedExample result{example, {}};
  const std::vector<EntitySpan> spans = recognizer.Recognize(example.text);
  if (spans.empty()) return result;
  absl::StatusOr<std::string> masked = Mask(example.text, spans);
  if (!masked.ok()) return result;  // recognizer broke its contract
  result.example.text = *std::move(masked);
  for (const EntitySpan& span : spans) {
    result.audit.push_back({example.id, std::string(kTierNer),
                            std::string(CategoryName(span.category)),
                            span.start, span.surface,
                            std::string(MaskTag(span.category))});
  }
  return result;
}

MaskedExample MaskExample(const LabeledExample& example,
                          const Gazetteer& gazetteer) {
  return MaskExample(example, GazetteerRecognizer(gazetteer));
}

std::vector<size_t> OccurringEntries(std::string_view text,
                                     const Gazetteer& gazetteer) {
  std::vector<size_t> found;
  const std::vector<WordToken> tokens = TokenizeWords(text);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::vector<size_t> matches =
        gazetteer.MatchesAt(text, tokens, i, /*longest_only=*/false);
    found.insert(found.end(), matches.begin(), matches.end());
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace textveil
