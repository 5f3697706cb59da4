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

#include "textveil/dp_noise.h"

#include <optional>
#include <utility>

#include "absl/strings/str_cat.h"
#include "textveil/parallel.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

struct ExampleNoise {
  LabeledExample example;
  AuditLog audit;
};

}  // namespace

std::string_view NoiseUnitName(NoiseUnit unit) {
  return unit == NoiseUnit::kChars ? "chars" : "examples";
}

absl::StatusOr<NoiseUnit> ParseNoiseUnit(std::string_view name) {
  if (name == "chars") return NoiseUnit::kChars;
  if (name == "examples") return NoiseUnit::kExamples;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown noise unit \"", AsAbsl(name), "\" (expected chars|examples)"));
}

absl::Status NoiseConfig::Validate() const {
  if (absl::StatusOr<Probability> p = Probability::Create(rate); !p.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise rate: ", p.status().message()));
  }
  if (absl::StatusOr<Probability> p = Probability::Create(example_char_rate);
      !p.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("example_char_rate: ", p.status().message()));
  }
  if (alphabet.empty()) {
    return absl::InvalidArgumentError("noise alphabet must not be empty");
  }
  return absl::OkStatus();
}

std::string_view CharOpName(CharOp op) {
  switch (op) {
    case CharOp::kInsert:
      return "insert";
    case CharOp::kDelete:
      return "delete";
    case CharOp::kSubstitute:
      return "substitute";
  }
  return "";
}

absl::StatusOr<PerturbedText> PerturbChars(std::string_view text,
                                           Probability rate,
                                           std::u32string_view alphabet,
                                           RngStream& stream,
                                           std::string_view id) {
  if (alphabet.empty()) {
    return absl::InvalidArgumentError("noise alphabet must not be empty");
  }
  PerturbedText out;
  out.text.reserve(text.size() + text.size() / 8);
  const std::vector<utf8::CodePoint> chars = utf8::Decode(text);
  for (size_t i = 0; i < chars.size(); ++i) {
    const std::string_view original = text.substr(chars[i].offset,
                                                  chars[i].length);
    if (!stream.Bernoulli(rate)) {
      out.text.append(original);
      continue;
    }
    const auto op = static_cast<CharOp>(*stream.UniformBelow(3));
    std::string emitted;
    if (op == CharOp::kInsert) emitted.append(original);
    if (op != CharOp::kDelete) {
      utf8::AppendCodePoint(alphabet[*stream.UniformBelow(alphabet.size())],
                            &emitted);
    }
    out.text.append(emitted);
    out.audit.push_back({std::string(id), std::string(kTierDpChar),
                         std::string(CharOpName(op)), i,
                         std::string(original), std::move(emitted)});
  }
  return out;
}

NoisedExamples FlipLabels(std::span<const LabeledExample> examples,
                          Probability rate, uint64_t seed) {
  NoisedExamples out;
  out.examples.assign(examples.begin(), examples.end());
  for (LabeledExample& example : out.examples) {
    RngStream stream = DeriveStream(seed, example.id, StreamTag::kDpLabel);
    if (!stream.Bernoulli(rate)) continue;
    const Label before = example.label;
    example.label = Flipped(before);
    out.audit.push_back({example.id, std::string(kTierDpLabel), "flip", 0,
                         std::to_string(LabelValue(before)),
                         std::to_string(LabelValue(example.label))});
  }
  return out;
}

absl::StatusOr<NoisedCorpus> ApplyDp(const SplitCorpus& corpus,
                                     const NoiseConfig& cfg, uint64_t seed,
                                     int workers) {
  if (absl::Status status = cfg.Validate(); !status.ok()) return status;
  const Probability rate = *Probability::Create(cfg.rate);
  const Probability example_char_rate =
      *Probability::Create(cfg.example_char_rate);

  NoisedCorpus out;
  out.corpus.ratios = corpus.ratios;
  out.corpus.split_seed = corpus.split_seed;
  for (Split split : kAllSplits) {
    const std::vector<LabeledExample>& input = corpus.part(split);
    const bool perturb_text = cfg.apply_to.contains(split);
    const bool flip = cfg.flip_labels && split == Split::kTrain;
    std::vector<ExampleNoise> results(input.size());
    ParallelFor(input.size(), workers, [&](size_t i) {
      ExampleNoise& result = results[i];
      result.example = input[i];
      if (perturb_text) {
        RngStream stream = DeriveStream(seed, input[i].id, StreamTag::kDpChar);
        std::optional<Probability> char_rate = rate;
        if (cfg.unit == NoiseUnit::kExamples) {
          char_rate = stream.Bernoulli(rate)
                          ? std::optional(example_char_rate)
                          : std::nullopt;
        }
        if (char_rate.has_value()) {
          // The alphabet was validated above, so this cannot fail.
          PerturbedText perturbed = *PerturbChars(
              input[i].text, *char_rate, cfg.alphabet, stream, input[i].id);
          result.example.text = std::move(perturbed.text);
          result.audit = std::move(perturbed.audit);
        }
      }
      if (flip) {
        NoisedExamples flipped = FlipLabels(
            std::span<const LabeledExample>(&result.example, 1), rate, seed);
        result.example = std::move(flipped.examples.front());
        result.audit.insert(result.audit.end(), flipped.audit.begin(),
                            flipped.audit.end());
      }
    });
    std::vector<LabeledExample>& part = out.corpus.part(split);
    part.reserve(results.size());
    for (ExampleNoise& result : results) {
      part.push_back(std::move(result.example));
      out.audit.insert(out.audit.end(),
                       std::make_move_iterator(result.audit.begin()),
                       std::make_move_iterator(result.audit.end()));
    }
  }
  return out;
}

}  // namespace textveil
