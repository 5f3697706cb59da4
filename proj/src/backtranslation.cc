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

#include "textveil/backtranslation.h"

#include <cstdio>
#include <functional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "textveil/io.h"
#include "textveil/resources.h"
#include "textveil/rng.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsLowerWord(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

struct TokenParts {
  std::string_view lead;
  std::string_view core;
  std::string_view trail;
};

TokenParts SplitToken(std::string_view token) {
  const std::vector<utf8::CodePoint> cps = utf8::Decode(token);
  size_t first = 0;
  while (first < cps.size() && utf8::IsPunctuation(cps[first].value)) ++first;
  size_t last = cps.size();
  while (last > first && utf8::IsPunctuation(cps[last - 1].value)) --last;
  const size_t core_begin = first < cps.size() ? cps[first].offset
                                               : token.size();
  const size_t core_end = last > first ? cps[last - 1].offset +
                                             cps[last - 1].length
                                       : core_begin;
  return {token.substr(0, core_begin),
          token.substr(core_begin, core_end - core_begin),
          token.substr(core_end)};
}

using CoreMapper =
    std::function<std::optional<std::string_view>(std::string_view)>;

// Splits on whitespace, maps eligible token cores and rejoins with single
// spaces.
std::string MapTokens(std::string_view text, bool allow_digits,
                      const CoreMapper& mapper) {
  std::string out;
  std::string token;
  const auto flush = [&]() {
    if (token.empty()) return;
    const TokenParts parts = SplitToken(token);
    bool eligible = !parts.core.empty();
    for (char c : parts.core) {
      eligible = eligible && (IsAsciiLetter(c) || (allow_digits &&
                                                   IsAsciiDigit(c)));
    }
    std::optional<std::string_view> mapped;
    if (eligible) mapped = mapper(utf8::AsciiLower(parts.core));
    if (!out.empty()) out += ' ';
    if (mapped.has_value()) {
      std::string word(*mapped);
      if (!word.empty() && IsUpper(parts.core.front()) && word[0] >= 'a' &&
          word[0] <= 'z') {
        word[0] = static_cast<char>(word[0] - 'a' + 'A');
      }
      absl::StrAppend(&out, AsAbsl(parts.lead), word, AsAbsl(parts.trail));
    } else {
      out += token;
    }
    token.clear();
  };
  for (const utf8::CodePoint& cp : utf8::Decode(text)) {
    if (utf8::IsWhitespace(cp.value)) {
      flush();
    } else {
      token.append(text.substr(cp.offset, cp.length));
    }
  }
  flush();
  return out;
}

std::string_view PivotPrefix(std::string_view name) {
  if (name == "xhosa") return "xh";
  if (name == "twi") return "tw";
  if (name == "lao") return "lo";
  if (name == "pashto") return "ps";
  return "yo";
}

}  // namespace

absl::StatusOr<PivotLexicon> PivotLexicon::Create(std::string name,
                                                  WordMap forward,
                                                  WordMap backward) {
  if (name.empty()) {
    return absl::InvalidArgumentError("pivot lexicon needs a name");
  }
  const auto bad = [&name](auto&&... parts) {
    return absl::InvalidArgumentError(
        absl::StrCat("pivot lexicon \"", name, "\": ", parts...));
  };
  for (const auto& [word, token] : forward) {
    if (!IsLowerWord(word)) {
      return bad("forward key \"", word, "\" is not a lowercase ASCII word");
    }
    if (!backward.contains(token)) {
      return bad("pivot token \"", token, "\" (from \"", word,
                 "\") has no backward entry");
    }
  }
  for (const auto& [token, word] : backward) {
    auto it = forward.find(word);
    if (it == forward.end() || backward.at(it->second) != word) {
      return bad("canonical word \"", word,
                 "\" is not a fixed point of the round trip");
    }
  }
  PivotLexicon lexicon;
  lexicon.name_ = std::move(name);
  lexicon.forward_ = std::move(forward);
  lexicon.backward_ = std::move(backward);
  return lexicon;
}

absl::StatusOr<PivotLexicon> PivotLexicon::FromJson(
    std::string_view contents) {
  const nlohmann::json object =
      nlohmann::json::parse(contents, nullptr, /*allow_exceptions=*/false);
  if (object.is_discarded() || !object.is_object() ||
      !object.contains("name") || !object["name"].is_string() ||
      !object.contains("forward") || !object["forward"].is_object() ||
      !object.contains("backward") || !object["backward"].is_object()) {
    return absl::InvalidArgumentError(
        "lexicon must be {\"name\": string, \"forward\": object, "
        "\"backward\": object}");
  }
  WordMap forward;
  WordMap backward;
  for (auto [key, target] : {std::pair{"forward", &forward},
                             std::pair{"backward", &backward}}) {
    for (const auto& [word, value] : object[key].items()) {
      if (!value.is_string()) {
        return absl::InvalidArgumentError(
            absl::StrCat("lexicon ", key, "[\"", word, "\"] is not a string"));
      }
      (*target)[word] = value.get<std::string>();
    }
  }
  return Create(object["name"].get<std::string>(), std::move(forward),
                std::move(backward));
}

absl::StatusOr<PivotLexicon> PivotLexicon::Load(
    const std::filesystem::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  absl::StatusOr<PivotLexicon> lexicon = FromJson(*contents);
  if (!lexicon.ok()) {
    return absl::Status(lexicon.status().code(),
                        absl::StrCat(path.string(), ": ",
                                     lexicon.status().message()));
  }
  return lexicon;
}

absl::StatusOr<PivotLexicon> PivotLexicon::Builtin(std::string_view name) {
  const std::span<const std::string_view> names = resources::PivotNames();
  size_t k = 0;
  while (k < names.size() && names[k] != name) ++k;
  if (k == names.size()) {
    return absl::NotFoundError(
        absl::StrCat("no built-in pivot lexicon named \"", AsAbsl(name), "\""));
  }
  // Each pivot covers four groups in five, and collapses a covered group
  // onto a pivot-specific member.
  WordMap forward;
  WordMap backward;
  const std::span<const resources::SynonymGroup> groups =
      resources::SynonymGroups();
  for (size_t g = 0; g < groups.size(); ++g) {
    if ((g + 2 * k + 1) % 5 == 0) continue;
    char token[16];
    std::snprintf(token, sizeof(token), "%s%03zu",
                  std::string(PivotPrefix(name)).c_str(), g);
    const auto& words = groups[g].words;
    backward[token] = std::string(words[(g + k) % words.size()]);
    for (std::string_view word : words) forward[std::string(word)] = token;
  }
  return Create(std::string(name), std::move(forward), std::move(backward));
}

std::vector<PivotLexicon> PivotLexicon::AllBuiltins() {
  std::vector<PivotLexicon> out;
  for (std::string_view name : resources::PivotNames()) {
    out.push_back(*Builtin(name));
  }
  return out;
}

std::string PivotLexicon::ToJson() const {
  nlohmann::ordered_json object;
  object["name"] = name_;
  object["forward"] = nlohmann::ordered_json::object();
  for (const auto& [word, token] : forward_) object["forward"][word] = token;
  object["backward"] = nlohmann::ordered_json::object();
  for (const auto& [token, word] : backward_) object["backward"][token] = word;
  return object.dump(2) + "\n";
}

std::optional<std::string_view> PivotLexicon::Canonical(
    std::string_view word) const {
  auto it = forward_.find(word);
  if (it == forward_.end()) return std::nullopt;
  return std::string_view(backward_.at(it->second));
}

std::string RoundTrip(std::string_view text, const PivotLexicon& lexicon) {
  return MapTokens(text, /*allow_digits=*/false,
                   [&lexicon](std::string_view word) {
                     return lexicon.Canonical(word);
                   });
}

absl::StatusOr<std::string> Translator::RoundTrip(std::string_view text,
                                                  std::string_view source,
                                                  std::string_view pivot) {
  absl::StatusOr<std::string> there = Translate(text, source, pivot);
  if (!there.ok()) return there.status();
  return Translate(*there, pivot, source);
}

LexiconTranslator::LexiconTranslator(std::vector<PivotLexicon> lexicons)
    : lexicons_(std::move(lexicons)) {}

const PivotLexicon* LexiconTranslator::Find(std::string_view name) const {
  for (const PivotLexicon& lexicon : lexicons_) {
    if (lexicon.name() == name) return &lexicon;
  }
  return nullptr;
}

absl::StatusOr<std::string> LexiconTranslator::Translate(
    std::string_view text, std::string_view source, std::string_view target) {
  if (const PivotLexicon* lexicon = Find(target)) {
    return MapTokens(text, /*allow_digits=*/false,
                     [lexicon](std::string_view word)
                         -> std::optional<std::string_view> {
                       auto it = lexicon->forward().find(word);
                       if (it == lexicon->forward().end()) return std::nullopt;
                       return std::string_view(it->second);
                     });
  }
  if (const PivotLexicon* lexicon = Find(source)) {
    return MapTokens(text, /*allow_digits=*/true,
                     [lexicon](std::string_view token)
                         -> std::optional<std::string_view> {
                       auto it = lexicon->backward().find(token);
                       if (it == lexicon->backward().end()) {
                         return std::nullopt;
                       }
                       return std::string_view(it->second);
                     });
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "no lexicon for translation ", AsAbsl(source), " -> ", AsAbsl(target)));
}

absl::StatusOr<std::string> LexiconTranslator::RoundTrip(
    std::string_view text, std::string_view /*source*/,
    std::string_view pivot) {
  const PivotLexicon* lexicon = Find(pivot);
  if (lexicon == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat("no lexicon for pivot \"", AsAbsl(pivot), "\""));
  }
  return textveil::RoundTrip(text, *lexicon);
}

std::string_view BtModeName(BtMode mode) {
  return mode == BtMode::kReplace ? "replace" : "augment";
}

absl::StatusOr<BtMode> ParseBtMode(std::string_view name) {
  if (name == "replace") return BtMode::kReplace;
  if (name == "augment") return BtMode::kAugment;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown back-translation mode \"", AsAbsl(name), "\" (expected replace|augment)"));
}

absl::StatusOr<BackTranslated> BackTranslateExample(
    const LabeledExample& example, Translator& translator,
    std::span<const std::string> pivots, BtMode mode, uint64_t seed) {
  if (pivots.empty()) {
    return absl::InvalidArgumentError(
        "back-translation needs at least one pivot");
  }
  BackTranslated out;
  if (mode == BtMode::kReplace) {
    RngStream stream = DeriveStream(seed, example.id, StreamTag::kBt);
    const std::string& pivot = pivots[*stream.UniformBelow(pivots.size())];
    absl::StatusOr<std::string> text =
        translator.RoundTrip(example.text, kSourceLanguage, pivot);
    if (!text.ok()) return text.status();
    LabeledExample result = example;
    if (*text != example.text) {
      out.audit.push_back({example.id, std::string(kTierBt),
                           absl::StrCat("replace:", pivot), 0, example.text,
                           *text});
      result.text = *std::move(text);
    }
    out.examples.push_back(std::move(result));
    return out;
  }
  out.examples.push_back(example);
  for (const std::string& pivot : pivots) {
    absl::StatusOr<std::string> text =
        translator.RoundTrip(example.text, kSourceLanguage, pivot);
    if (!text.ok()) return text.status();
    LabeledExample copy = example;
    copy.id = absl::StrCat(example.id, AsAbsl(kBtIdSuffix), pivot);
    copy.text = *std::move(text);
    out.audit.push_back({copy.id, std::string(kTierBt),
                         absl::StrCat("augment:", pivot), 0, example.text,
                         copy.text});
    out.examples.push_back(std::move(copy));
  }
  return out;
}

absl::StatusOr<BackTranslated> BackTranslateExample(
    const LabeledExample& example, std::span<const PivotLexicon> pivots,
    BtMode mode, uint64_t seed) {
  std::vector<std::string> names;
  for (const PivotLexicon& lexicon : pivots) names.push_back(lexicon.name());
  LexiconTranslator translator(
      std::vector<PivotLexicon>(pivots.begin(), pivots.end()));
  return BackTranslateExample(example, translator, names, mode, seed);
}

std::string_view SourceId(std::string_view id) {
  const size_t pos = id.rfind(kBtIdSuffix);
  return pos == std::string_view::npos ? id : id.substr(0, pos);
}

}  // namespace textveil
