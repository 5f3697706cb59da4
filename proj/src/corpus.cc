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

#include "textveil/corpus.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "textveil/io.h"
#include "textveil/resources.h"
#include "textveil/rng.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kManifestFile = "manifest.json";

// Unmapped filler words; back-translation leaves these untouched.
bool HasVisibleContent(std::string_view text) {
  for (const utf8::CodePoint& cp : utf8::Decode(text)) {
    if (!utf8::IsWhitespace(cp.value)) return true;
  }
  return false;
}

absl::StatusOr<LabeledExample> ParseLine(std::string_view line,
                                         size_t line_index) {
  const std::string where = absl::StrCat("line ", line_index + 1, ": ");
  json object = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (object.is_discarded() || !object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, "not a JSON object"));
  }
  LabeledExample example;
  if (auto it = object.find("id"); it != object.end()) {
    if (!it->is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, "\"id\" must be a string"));
    }
    example.id = it->get<std::string>();
    object.erase(it);
  } else {
    example.id = std::to_string(line_index);
  }
  auto text = object.find("text");
  if (text == object.end() || !text->is_string()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, "missing string \"text\""));
  }
  example.text = text->get<std::string>();
  object.erase(text);
  auto label = object.find("label");
  if (label == object.end() || !label->is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, "missing integer \"label\""));
  }
  const int64_t value = label->get<int64_t>();
  if (value != 0 && value != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, "label must be 0 or 1, got ", value));
  }
  example.label = static_cast<Label>(value);
  object.erase(label);
  example.extra = std::move(object);
  return example;
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "";
}

absl::StatusOr<Split> ParseSplit(std::string_view name) {
  for (Split split : kAllSplits) {
    if (SplitName(split) == name) return split;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown split \"", AsAbsl(name), "\" (expected train|dev|test)"));
}

absl::StatusOr<SplitRatios> SplitRatios::Create(double train, double dev,
                                                double test) {
  if (!(train >= 0 && dev >= 0 && test >= 0)) {
    return absl::InvalidArgumentError("split ratios must be non-negative");
  }
  if (std::abs(train + dev + test - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(absl::StrCat(
        "split ratios must sum to 1, got ", train + dev + test));
  }
  return SplitRatios({train, dev, test});
}

std::vector<LabeledExample>& SplitCorpus::part(Split split) {
  switch (split) {
    case Split::kTrain:
      return train;
    case Split::kDev:
      return dev;
    case Split::kTest:
      break;
  }
  return test;
}

const std::vector<LabeledExample>& SplitCorpus::part(Split split) const {
  return const_cast<SplitCorpus*>(this)->part(split);
}

absl::Status ValidateExamples(std::span<const LabeledExample> examples) {
  std::unordered_set<std::string_view> seen;
  for (size_t i = 0; i < examples.size(); ++i) {
    const LabeledExample& example = examples[i];
    if (example.label != Label::kNonPropaganda &&
        example.label != Label::kPropaganda) {
      return absl::InvalidArgumentError(
          absl::StrCat("example ", example.id, ": label must be 0 or 1"));
    }
    if (!seen.insert(example.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate id \"", example.id, "\""));
    }
    if (!HasVisibleContent(example.text)) {
      return absl::InvalidArgumentError(
          absl::StrCat("example ", example.id, ": text is empty"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<LabeledExample>> ParseJsonl(
    std::string_view contents) {
  std::vector<LabeledExample> examples;
  std::unordered_set<std::string> ids;
  size_t line_index = 0;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (HasVisibleContent(line)) {
      absl::StatusOr<LabeledExample> example = ParseLine(line, line_index);
      if (!example.ok()) return example.status();
      if (!HasVisibleContent(example->text)) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_index + 1, ": text is empty"));
      }
      if (!ids.insert(example->id).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_index + 1, ": duplicate id \"", example->id, "\""));
      }
      examples.push_back(*std::move(example));
    }
    ++line_index;
  }
  return examples;
}

absl::StatusOr<std::vector<LabeledExample>> LoadJsonl(const fs::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  absl::StatusOr<std::vector<LabeledExample>> examples =
      ParseJsonl(*contents);
  if (!examples.ok()) {
    return absl::Status(examples.status().code(),
                        absl::StrCat(path.string(), ": ",
                                     examples.status().message()));
  }
  return examples;
}

std::string ExampleToJsonLine(const LabeledExample& example) {
  nlohmann::ordered_json line;
  line["id"] = example.id;
  line["text"] = example.text;
  line["label"] = LabelValue(example.label);
  for (const auto& [key, value] : example.extra.items()) line[key] = value;
  return line.dump(-1, ' ', /*ensure_ascii=*/false,
                   json::error_handler_t::replace);
}

std::string SerializeJsonl(std::span<const LabeledExample> examples) {
  std::string out;
  for (const LabeledExample& example : examples) {
    out += ExampleToJsonLine(example);
    out += '\n';
  }
  return out;
}

absl::Status SaveJsonl(const fs::path& path,
                       std::span<const LabeledExample> examples) {
  return WriteFile(path, SerializeJsonl(examples));
}

absl::StatusOr<SplitCorpus> SplitExamples(std::vector<LabeledExample> corpus,
                                          const SplitRatios& ratios,
                                          uint64_t seed) {
  if (absl::Status status = ValidateExamples(corpus); !status.ok()) {
    return status;
  }
  RngStream stream = DeriveStream(seed, "", StreamTag::kSplit);
  for (size_t i = corpus.size(); i > 1; --i) {
    const uint64_t j = *stream.UniformBelow(i);
    std::swap(corpus[i - 1], corpus[j]);
  }
  const size_t n = corpus.size();
  // The epsilon absorbs products like 0.6 * 35 = 20.999999999999996.
  const auto cut = [n](double ratio) {
    return static_cast<size_t>(std::floor(ratio * static_cast<double>(n) +
                                          1e-9));
  };
  const size_t n_train = std::min(n, cut(ratios.train()));
  const size_t n_dev = std::min(n - n_train, cut(ratios.dev()));

  SplitCorpus out;
  out.ratios = ratios;
  out.split_seed = seed;
  auto begin = std::make_move_iterator(corpus.begin());
  out.train.assign(begin, begin + n_train);
  out.dev.assign(begin + n_train, begin + n_train + n_dev);
  out.test.assign(begin + n_train + n_dev, std::make_move_iterator(corpus.end()));
  return out;
}

uint64_t CorpusDigest(const SplitCorpus& corpus) {
  uint64_t hash = kFnvOffsetBasis;
  for (Split split : kAllSplits) {
    hash = Fnv1a64(SplitName(split), hash);
    hash = Fnv1a64("\n", hash);
    hash = Fnv1a64(SerializeJsonl(corpus.part(split)), hash);
  }
  return hash;
}

absl::Status SaveSplitCorpus(const fs::path& dir, const SplitCorpus& corpus,
                             const json& manifest_extra) {
  if (absl::Status status = EnsureDirectory(dir); !status.ok()) return status;
  json manifest = json::object();
  if (manifest_extra.is_object()) manifest = manifest_extra;
  manifest["ratios"] = corpus.ratios.values();
  manifest["split_seed"] = corpus.split_seed;
  manifest["counts"] = {{"train", corpus.train.size()},
                        {"dev", corpus.dev.size()},
                        {"test", corpus.test.size()}};
  manifest["corpus_digest"] = HexDigest(CorpusDigest(corpus));
  for (Split split : kAllSplits) {
    absl::Status status =
        SaveJsonl(dir / absl::StrCat(AsAbsl(SplitName(split)), ".jsonl"),
                  corpus.part(split));
    if (!status.ok()) return status;
  }
  return WriteFile(dir / kManifestFile, manifest.dump(2) + "\n");
}

absl::StatusOr<json> LoadManifest(const fs::path& dir) {
  absl::StatusOr<std::string> contents = ReadFile(dir / kManifestFile);
  if (!contents.ok()) return contents.status();
  json manifest = json::parse(*contents, nullptr, /*allow_exceptions=*/false);
  if (manifest.is_discarded() || !manifest.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat((dir / kManifestFile).string(), ": not a JSON object"));
  }
  return manifest;
}

absl::StatusOr<SplitCorpus> LoadSplitCorpus(const fs::path& dir) {
  absl::StatusOr<json> manifest = LoadManifest(dir);
  if (!manifest.ok()) return manifest.status();
  SplitCorpus corpus;
  const json& ratios = (*manifest)["ratios"];
  if (ratios.is_array() && ratios.size() == 3) {
    absl::StatusOr<SplitRatios> parsed = SplitRatios::Create(
        ratios[0].get<double>(), ratios[1].get<double>(),
        ratios[2].get<double>());
    if (!parsed.ok()) return parsed.status();
    corpus.ratios = *parsed;
  }
  if (auto seed = manifest->find("split_seed");
      seed != manifest->end() && seed->is_number_unsigned()) {
    corpus.split_seed = seed->get<uint64_t>();
  }
  std::vector<LabeledExample> all;
  for (Split split : kAllSplits) {
    absl::StatusOr<std::vector<LabeledExample>> part =
        LoadJsonl(dir / absl::StrCat(AsAbsl(SplitName(split)), ".jsonl"));
    if (!part.ok()) return part.status();
    corpus.part(split) = *std::move(part);
    all.insert(all.end(), corpus.part(split).begin(),
               corpus.part(split).end());
  }
  if (absl::Status status = ValidateExamples(all); !status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(dir.string(), ": ", status.message()));
  }
  return corpus;
}

absl::StatusOr<std::vector<LabeledExample>> GenerateSynthetic(size_t n,
                                                              uint64_t seed) {
  if (n < 10) {
    return absl::InvalidArgumentError(
        absl::StrCat("synthetic corpus needs at least 10 examples, got ", n));
  }
  // Short texts over content words only: every SGD step then moves the
  // scores of unrelated texts less, which keeps the noise sweep stable.
  std::vector<std::string_view> neutral;
  std::vector<std::string_view> markers;
  for (const resources::SynonymGroup& group : resources::SynonymGroups()) {
    auto& target = group.persuasion_marker ? markers : neutral;
    target.insert(target.end(), group.words.begin(), group.words.end());
  }
  const std::span<const resources::EntityEntry> entities =
      resources::DefaultEntities();

  RngStream stream(Fnv1a64("synthetic-corpus") ^ seed);
  const auto pick = [&stream](size_t size) {
    return static_cast<size_t>(*stream.UniformBelow(size));
  };
  const Probability half = *Probability::Create(0.5);
  const Probability entity_rate = *Probability::Create(0.3);

  std::vector<LabeledExample> out;
  out.reserve(n);
  char id[32];
  for (size_t i = 0; i < n; ++i) {
    std::snprintf(id, sizeof(id), "syn-%06zu", i);
    const bool positive = stream.Bernoulli(half);
    std::vector<std::string_view> words;
    const size_t length = 6 + pick(5);
    for (size_t k = 0; k < length; ++k) {
      words.push_back(neutral[pick(neutral.size())]);
    }
    if (positive) {
      const size_t count = 2 + pick(3);
      for (size_t k = 0; k < count; ++k) {
        words.insert(words.begin() + pick(words.size() + 1),
                     markers[pick(markers.size())]);
      }
    }
    if (stream.Bernoulli(entity_rate)) {
      words.insert(words.begin() + pick(words.size() + 1),
                   entities[pick(entities.size())].surface);
    }
    std::string text;
    for (std::string_view word : words) {
      if (!text.empty()) text += ' ';
      text += word;
    }
    if (text[0] >= 'a' && text[0] <= 'z') text[0] = text[0] - 'a' + 'A';
    text += '.';
    out.push_back({id, std::move(text),
                   positive ? Label::kPropaganda : Label::kNonPropaganda});
  }
  return out;
}

}  // namespace textveil
