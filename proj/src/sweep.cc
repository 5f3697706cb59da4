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

#include "textveil/sweep.h"

#include <algorithm>
#include <cstdio>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

constexpr std::string_view kCsvHeader =
    "procedure,tier_set,noise_rate,dev_f1,test_f1,entity_exposure,"
    "label_flip_fraction";

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

absl::StatusOr<std::vector<std::string>> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back().push_back(c);
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) return absl::InvalidArgumentError("unterminated quote");
  return fields;
}

std::string Pad(std::string_view text, size_t width) {
  std::string out(text);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

}  // namespace

absl::StatusOr<TierSet> ParseTierSet(std::string_view name) {
  const std::string lower = utf8::AsciiLower(name);
  if (lower == "none" || lower == "baseline") return TierSet{};
  if (lower == "combined") return TierSet{Tier::kBt, Tier::kNer, Tier::kDp};
  TierSet tiers;
  for (absl::string_view part : absl::StrSplit(lower, '+')) {
    absl::StatusOr<Tier> tier = ParseTier(AsStd(part));
    if (!tier.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown tier set \"", AsAbsl(name),
          "\" (expected none|bt|ner|dp|combined or names joined by '+')"));
    }
    tiers.insert(*tier);
  }
  return tiers;
}

std::string TierSetName(const TierSet& tiers) {
  if (tiers.empty()) return "none";
  std::vector<std::string> names;
  for (Tier tier : tiers) names.push_back(utf8::AsciiLower(TierName(tier)));
  return absl::StrJoin(names, "+");
}

std::string ProcedureName(const TierSet& tiers, double rate) {
  if (tiers.empty()) return "Direct Fine-tune";
  if (tiers == TierSet{Tier::kBt}) {
    return "Adversarial Defense (Back Translation)";
  }
  if (tiers == TierSet{Tier::kNer}) return "NER Masking";
  std::vector<absl::string_view> names;
  for (Tier tier : tiers) names.push_back(AsAbsl(TierName(tier)));
  std::string label = absl::StrJoin(names, ", ");
  if (tiers.contains(Tier::kDp)) {
    absl::StrAppend(&label, " (noise = ", Fixed(rate, 2), ")");
  }
  return label;
}

std::vector<TierSet> WithReferenceRows(std::span<const TierSet> swept) {
  std::vector<TierSet> out = {{}, {Tier::kBt}, {Tier::kNer}};
  out.insert(out.end(), swept.begin(), swept.end());
  return out;
}

absl::StatusOr<std::vector<SweepRow>> RunSweep(const SplitCorpus& corpus,
                                               const SweepOptions& options,
                                               int workers) {
  if (options.rates.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one noise rate");
  }
  if (options.tier_sets.empty()) {
    return absl::InvalidArgumentError("sweep needs at least one tier set");
  }
  TransformConfig base = options.base;
  base.seed = options.seed;
  base.tiers = {Tier::kBt, Tier::kNer, Tier::kDp};
  absl::StatusOr<TransformResources> resources = LoadResources(base);
  if (!resources.ok()) return resources.status();

  std::vector<SweepRow> rows;
  for (const TierSet& tiers : options.tier_sets) {
    const std::vector<double> rates =
        tiers.contains(Tier::kDp) ? options.rates : std::vector<double>{0.0};
    for (double rate : rates) {
      TransformConfig cfg = base;
      cfg.tiers = tiers;
      cfg.noise.rate = rate;
      absl::StatusOr<TransformResult> result =
          RunPipeline(corpus, cfg, *resources, workers);
      if (!result.ok()) return result.status();
      absl::StatusOr<Model> model =
          Train(result->corpus.train, options.seed, options.train, workers);
      if (!model.ok()) return model.status();
      absl::StatusOr<double> exposure =
          EntityExposure(corpus, result->corpus, resources->gazetteer);
      if (!exposure.ok()) return exposure.status();
      absl::StatusOr<double> flips = FlipAudit(corpus, result->corpus);
      if (!flips.ok()) return flips.status();
      rows.push_back({
          .procedure = ProcedureName(tiers, rate),
          .tier_set = TierSetName(tiers),
          .noise_rate = rate,
          .dev_f1 = Evaluate(*model, result->corpus.dev, workers).f1,
          .test_f1 = Evaluate(*model, result->corpus.test, workers).f1,
          .entity_exposure = *exposure,
          .label_flip_fraction = *flips,
      });
    }
  }
  return rows;
}

std::string SweepToCsv(std::span<const SweepRow> rows) {
  std::string out = absl::StrCat(AsAbsl(kCsvHeader), "\n");
  for (const SweepRow& row : rows) {
    absl::StrAppend(&out, CsvField(row.procedure), ",", row.tier_set, ",",
                    Fixed(row.noise_rate, 2), ",", Fixed(row.dev_f1, 4), ",",
                    Fixed(row.test_f1, 4), ",", Fixed(row.entity_exposure, 4),
                    ",", Fixed(row.label_flip_fraction, 4), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<SweepRow>> ParseSweepCsv(std::string_view csv) {
  std::vector<absl::string_view> lines = absl::StrSplit(AsAbsl(csv), '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || AsStd(lines.front()) != kCsvHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("report header must be: ", AsAbsl(kCsvHeader)));
  }
  std::vector<SweepRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    absl::StatusOr<std::vector<std::string>> fields = SplitCsvLine(AsStd(lines[i]));
    if (!fields.ok() || fields->size() != 7) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", i + 1, ": expected 7 fields"));
    }
    SweepRow row;
    row.procedure = (*fields)[0];
    row.tier_set = (*fields)[1];
    double* numbers[] = {&row.noise_rate, &row.dev_f1, &row.test_f1,
                         &row.entity_exposure, &row.label_flip_fraction};
    for (size_t k = 0; k < 5; ++k) {
      if (!absl::SimpleAtod((*fields)[k + 2], numbers[k])) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", i + 1, ": bad number \"", (*fields)[k + 2],
                         "\""));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string RenderTable(std::span<const SweepRow> rows) {
  size_t width = std::string_view("Procedure").size();
  for (const SweepRow& row : rows) {
    width = std::max(width, row.procedure.size());
  }
  std::string out = absl::StrCat(Pad("Procedure", width),
                                 "  Dev F1  Test F1  Exposure  Flipped\n");
  absl::StrAppend(&out, std::string(width + 36, '-'), "\n");
  for (const SweepRow& row : rows) {
    absl::StrAppend(&out, Pad(row.procedure, width), "  ",
                    Pad(Fixed(row.dev_f1, 2), 6), "  ",
                    Pad(Fixed(row.test_f1, 2), 7), "  ",
                    Pad(Fixed(row.entity_exposure, 2), 8), "  ",
                    Fixed(row.label_flip_fraction, 3), "\n");
  }
  return out;
}

}  // namespace textveil
