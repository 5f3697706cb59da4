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

#include "textveil/pipeline.h"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "textveil/io.h"
#include "textveil/parallel.h"
#include "textveil/resources.h"
#include "textveil/rng.h"
#include "textveil/sv.h"
#include "textveil/utf8.h"

namespace textveil {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kDefaultGazetteer = "default";

absl::Status ConfigError(absl::string_view where, absl::string_view message) {
  return absl::InvalidArgumentError(
      absl::StrCat("config ", where, ": ", message));
}

absl::Status CheckKeys(const json& object, absl::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) return ConfigError(where, "must be an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return ConfigError(where, absl::StrCat("unknown key \"", key, "\""));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::set<Split>> ParseSplitSet(const json& value,
                                              absl::string_view where) {
  if (!value.is_array()) return ConfigError(where, "must be an array");
  std::set<Split> splits;
  for (const json& item : value) {
    if (!item.is_string()) return ConfigError(where, "entries must be strings");
    absl::StatusOr<Split> split = ParseSplit(item.get<std::string>());
    if (!split.ok()) return ConfigError(where, split.status().message());
    splits.insert(*split);
  }
  return splits;
}

json SplitSetToJson(const std::set<Split>& splits) {
  json out = json::array();
  for (Split split : splits) out.push_back(SplitName(split));
  return out;
}

std::string EncodeUtf32(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) utf8::AppendCodePoint(c, &out);
  return out;
}

bool LooksLikePath(std::string_view pivot) {
  return pivot.find('/') != std::string_view::npos ||
         (pivot.size() > 5 && pivot.substr(pivot.size() - 5) == ".json");
}

fs::path Resolve(const fs::path& base_dir, std::string_view path) {
  fs::path p(path);
  return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
}

absl::Status Integrity(size_t record_index, const AuditRecord& record,
                       std::string_view problem) {
  return absl::DataLossError(absl::StrCat(
      "audit record ", record_index + 1, " (id \"", record.id, "\", tier ",
      record.tier, ", op ", record.op, "): ", AsAbsl(problem)));
}

// Where each example currently lives.
struct Location {
  Split split;
  size_t index;
};

std::unordered_map<std::string, Location> IndexCorpus(
    const SplitCorpus& corpus) {
  std::unordered_map<std::string, Location> index;
  for (Split split : kAllSplits) {
    const auto& part = corpus.part(split);
    for (size_t i = 0; i < part.size(); ++i) index[part[i].id] = {split, i};
  }
  return index;
}

}  // namespace

std::string_view TierName(Tier tier) {
  switch (tier) {
    case Tier::kBt:
      return "BT";
    case Tier::kNer:
      return "NER";
    case Tier::kDp:
      return "DP";
  }
  return "";
}

absl::StatusOr<Tier> ParseTier(std::string_view name) {
  const std::string lower = utf8::AsciiLower(name);
  if (lower == "bt") return Tier::kBt;
  if (lower == "ner") return Tier::kNer;
  if (lower == "dp") return Tier::kDp;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown tier \"", AsAbsl(name), "\" (expected BT|NER|DP)"));
}

TransformConfig::TransformConfig() {
  for (std::string_view name : resources::PivotNames()) {
    pivots.emplace_back(name);
  }
}

absl::StatusOr<TransformConfig> TransformConfig::FromJson(
    const json& root, const fs::path& base_dir) {
  TransformConfig cfg;
  cfg.base_dir = base_dir;
  if (absl::Status s =
          CheckKeys(root, "root", {"tiers", "noise", "bt", "ner", "seed"});
      !s.ok()) {
    return s;
  }
  if (root.contains("tiers")) {
    const json& tiers = root["tiers"];
    if (!tiers.is_array()) return ConfigError("tiers", "must be an array");
    for (const json& item : tiers) {
      if (!item.is_string()) return ConfigError("tiers", "entries must be strings");
      absl::StatusOr<Tier> tier = ParseTier(item.get<std::string>());
      if (!tier.ok()) return ConfigError("tiers", tier.status().message());
      cfg.tiers.insert(*tier);
    }
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      return ConfigError("seed", "must be a non-negative integer");
    }
    cfg.seed = root["seed"].get<uint64_t>();
  }
  if (root.contains("noise")) {
    const json& noise = root["noise"];
    if (absl::Status s = CheckKeys(noise, "noise",
                                   {"rate", "unit", "apply_to", "flip_labels",
                                    "example_char_rate", "alphabet"});
        !s.ok()) {
      return s;
    }
    for (auto [key, target] :
         {std::pair{"rate", &cfg.noise.rate},
          std::pair{"example_char_rate", &cfg.noise.example_char_rate}}) {
      if (!noise.contains(key)) continue;
      if (!noise[key].is_number()) {
        return ConfigError(absl::StrCat("noise.", key), "must be a number");
      }
      *target = noise[key].get<double>();
    }
    if (noise.contains("unit")) {
      if (!noise["unit"].is_string()) return ConfigError("noise.unit", "must be a string");
      absl::StatusOr<NoiseUnit> unit =
          ParseNoiseUnit(noise["unit"].get<std::string>());
      if (!unit.ok()) return ConfigError("noise.unit", unit.status().message());
      cfg.noise.unit = *unit;
    }
    if (noise.contains("apply_to")) {
      absl::StatusOr<std::set<Split>> splits =
          ParseSplitSet(noise["apply_to"], "noise.apply_to");
      if (!splits.ok()) return splits.status();
      cfg.noise.apply_to = *splits;
    }
    if (noise.contains("flip_labels")) {
      if (!noise["flip_labels"].is_boolean()) {
        return ConfigError("noise.flip_labels", "must be a boolean");
      }
      cfg.noise.flip_labels = noise["flip_labels"].get<bool>();
    }
    if (noise.contains("alphabet")) {
      if (!noise["alphabet"].is_string()) {
        return ConfigError("noise.alphabet", "must be a string");
      }
      const std::string alphabet = noise["alphabet"].get<std::string>();
      if (!utf8::IsValid(alphabet)) {
        return ConfigError("noise.alphabet", "must be valid UTF-8");
      }
      cfg.noise.alphabet.clear();
      for (const utf8::CodePoint& cp : utf8::Decode(alphabet)) {
        cfg.noise.alphabet.push_back(cp.value);
      }
    }
  }
  if (root.contains("bt")) {
    const json& bt = root["bt"];
    if (absl::Status s = CheckKeys(
            bt, "bt", {"mode", "pivots", "apply_to", "translator", "remote"});
        !s.ok()) {
      return s;
    }
    if (bt.contains("mode")) {
      if (!bt["mode"].is_string()) return ConfigError("bt.mode", "must be a string");
      absl::StatusOr<BtMode> mode = ParseBtMode(bt["mode"].get<std::string>());
      if (!mode.ok()) return ConfigError("bt.mode", mode.status().message());
      cfg.bt_mode = *mode;
    }
    if (bt.contains("pivots")) {
      if (!bt["pivots"].is_array()) return ConfigError("bt.pivots", "must be an array");
      cfg.pivots.clear();
      for (const json& item : bt["pivots"]) {
        if (!item.is_string()) {
          return ConfigError("bt.pivots", "entries must be strings");
        }
        cfg.pivots.push_back(item.get<std::string>());
      }
    }
    if (bt.contains("apply_to")) {
      absl::StatusOr<std::set<Split>> splits =
          ParseSplitSet(bt["apply_to"], "bt.apply_to");
      if (!splits.ok()) return splits.status();
      cfg.bt_apply_to = *splits;
    }
    const std::string translator = bt.value("translator", "lexicon");
    if (translator == "remote") {
      if (!bt.contains("remote")) {
        return ConfigError("bt.remote", "required when translator is remote");
      }
      const json& remote = bt["remote"];
      if (absl::Status s = CheckKeys(remote, "bt.remote",
                                     {"url", "timeout_ms", "retries", "cache"});
          !s.ok()) {
        return s;
      }
      RemoteTranslatorOptions options;
      options.base_url = remote.value("url", "");
      options.timeout_ms = remote.value("timeout_ms", options.timeout_ms);
      options.retries = remote.value("retries", options.retries);
      if (remote.contains("cache")) {
        options.cache_path = remote["cache"].get<std::string>();
      }
      cfg.remote = options;
    } else if (translator != "lexicon") {
      return ConfigError("bt.translator", "expected lexicon|remote");
    }
  }
  if (root.contains("ner")) {
    const json& ner = root["ner"];
    if (absl::Status s = CheckKeys(ner, "ner",
                                   {"gazetteer", "case_sensitive", "apply_to"});
        !s.ok()) {
      return s;
    }
    if (ner.contains("gazetteer")) {
      if (!ner["gazetteer"].is_string()) {
        return ConfigError("ner.gazetteer", "must be a string");
      }
      cfg.gazetteer = ner["gazetteer"].get<std::string>();
    }
    if (ner.contains("case_sensitive")) {
      if (!ner["case_sensitive"].is_boolean()) {
        return ConfigError("ner.case_sensitive", "must be a boolean");
      }
      cfg.case_sensitive = ner["case_sensitive"].get<bool>();
    }
    if (ner.contains("apply_to")) {
      absl::StatusOr<std::set<Split>> splits =
          ParseSplitSet(ner["apply_to"], "ner.apply_to");
      if (!splits.ok()) return splits.status();
      cfg.ner_apply_to = *splits;
    }
  }
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  return cfg;
}

absl::StatusOr<TransformConfig> TransformConfig::Load(const fs::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  if (!contents.ok()) return contents.status();
  const json root = json::parse(*contents, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": not valid JSON"));
  }
  return FromJson(root, path.parent_path());
}

absl::Status TransformConfig::Validate() const {
  if (absl::Status s = noise.Validate(); !s.ok()) return s;
  if (tiers.contains(Tier::kBt) && pivots.empty()) {
    return ConfigError("bt.pivots", "back-translation needs at least one pivot");
  }
  if (bt_apply_to.contains(Split::kTest)) {
    return ConfigError("bt.apply_to", "back-translation applies to train/dev only");
  }
  return absl::OkStatus();
}

json TransformConfig::ToJson() const {
  json root;
  root["tiers"] = json::array();
  for (Tier tier : tiers) root["tiers"].push_back(TierName(tier));
  root["seed"] = seed;
  root["noise"] = {{"rate", noise.rate},
                   {"unit", NoiseUnitName(noise.unit)},
                   {"apply_to", SplitSetToJson(noise.apply_to)},
                   {"flip_labels", noise.flip_labels},
                   {"example_char_rate", noise.example_char_rate},
                   {"alphabet", EncodeUtf32(noise.alphabet)}};
  root["bt"] = {{"mode", BtModeName(bt_mode)},
                {"pivots", pivots},
                {"apply_to", SplitSetToJson(bt_apply_to)},
                {"translator", remote.has_value() ? "remote" : "lexicon"}};
  if (remote.has_value()) {
    root["bt"]["remote"] = {{"url", remote->base_url},
                            {"timeout_ms", remote->timeout_ms},
                            {"retries", remote->retries},
                            {"cache", remote->cache_path.string()}};
  }
  root["ner"] = {{"gazetteer", gazetteer},
                 {"case_sensitive", case_sensitive},
                 {"apply_to", SplitSetToJson(ner_apply_to)}};
  return root;
}

uint64_t TransformConfig::Hash() const { return Fnv1a64(ToJson().dump()); }

absl::StatusOr<TransformResources> LoadResources(const TransformConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  const bool ner = cfg.tiers.contains(Tier::kNer);
  absl::StatusOr<Gazetteer> gazetteer =
      !ner || cfg.gazetteer == kDefaultGazetteer
          ? Gazetteer::CreateDefault(cfg.case_sensitive)
          : Gazetteer::LoadJsonl(Resolve(cfg.base_dir, cfg.gazetteer),
                                 cfg.case_sensitive);
  if (!gazetteer.ok()) return gazetteer.status();

  TransformResources resources{*std::move(gazetteer), nullptr, {}};
  const bool bt = cfg.tiers.contains(Tier::kBt);
  if (bt && cfg.remote.has_value()) {
    RemoteTranslatorOptions options = *cfg.remote;
    if (!options.cache_path.empty()) {
      options.cache_path = Resolve(cfg.base_dir, options.cache_path.string());
    }
    absl::StatusOr<std::unique_ptr<RemoteTranslator>> remote =
        RemoteTranslator::Create(options);
    if (!remote.ok()) return remote.status();
    resources.translator = *std::move(remote);
    resources.pivot_names = cfg.pivots;
    return resources;
  }
  std::vector<PivotLexicon> lexicons;
  const std::vector<std::string> pivots =
      bt ? cfg.pivots : std::vector<std::string>{};
  for (const std::string& pivot : pivots) {
    absl::StatusOr<PivotLexicon> lexicon =
        LooksLikePath(pivot) ? PivotLexicon::Load(Resolve(cfg.base_dir, pivot))
                             : PivotLexicon::Builtin(pivot);
    if (!lexicon.ok()) return lexicon.status();
    resources.pivot_names.push_back(lexicon->name());
    lexicons.push_back(*std::move(lexicon));
  }
  resources.translator =
      std::make_unique<LexiconTranslator>(std::move(lexicons));
  return resources;
}

absl::StatusOr<TransformResult> RunPipeline(const SplitCorpus& corpus,
                                            const TransformConfig& cfg,
                                            int workers) {
  absl::StatusOr<TransformResources> resources = LoadResources(cfg);
  if (!resources.ok()) return resources.status();
  return RunPipeline(corpus, cfg, *resources, workers);
}

absl::StatusOr<TransformResult> RunPipeline(const SplitCorpus& corpus,
                                            const TransformConfig& cfg,
                                            TransformResources& resources,
                                            int workers) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  TransformResult result;
  result.corpus = corpus;
  std::map<std::string, size_t> touched;  // examples changed per tier

  if (cfg.tiers.contains(Tier::kBt)) {
    for (Split split : cfg.bt_apply_to) {
      const std::vector<LabeledExample>& input = result.corpus.part(split);
      std::vector<absl::StatusOr<BackTranslated>> outputs(input.size());
      ParallelFor(input.size(), workers, [&](size_t i) {
        outputs[i] = BackTranslateExample(input[i], *resources.translator,
                                          resources.pivot_names, cfg.bt_mode,
                                          cfg.seed);
      });
      std::vector<LabeledExample> part;
      for (absl::StatusOr<BackTranslated>& output : outputs) {
        if (!output.ok()) return output.status();
        if (!output->audit.empty()) ++touched["bt"];
        for (LabeledExample& example : output->examples) {
          part.push_back(std::move(example));
        }
        result.audit.insert(result.audit.end(), output->audit.begin(),
                            output->audit.end());
      }
      result.corpus.part(split) = std::move(part);
    }
  }

  if (cfg.tiers.contains(Tier::kNer)) {
    const GazetteerRecognizer recognizer(resources.gazetteer);
    for (Split split : cfg.ner_apply_to) {
      std::vector<LabeledExample>& part = result.corpus.part(split);
      std::vector<MaskedExample> masked(part.size());
      ParallelFor(part.size(), workers, [&](size_t i) {
        masked[i] = MaskExample(part[i], recognizer);
      });
      for (size_t i = 0; i < part.size(); ++i) {
        if (!masked[i].audit.empty()) ++touched["ner"];
        part[i] = std::move(masked[i].example);
        result.audit.insert(result.audit.end(), masked[i].audit.begin(),
                            masked[i].audit.end());
      }
    }
  }

  if (cfg.tiers.contains(Tier::kDp)) {
    absl::StatusOr<NoisedCorpus> noised =
        ApplyDp(result.corpus, cfg.noise, cfg.seed, workers);
    if (!noised.ok()) return noised.status();
    std::unordered_set<std::string_view> perturbed;
    for (const AuditRecord& record : noised->audit) {
      if (record.tier == kTierDpLabel) ++touched["dp-label"];
      if (record.tier == kTierDpChar) perturbed.insert(record.id);
    }
    touched["dp-char"] = perturbed.size();
    result.corpus = std::move(noised->corpus);
    result.audit.insert(result.audit.end(),
                        std::make_move_iterator(noised->audit.begin()),
                        std::make_move_iterator(noised->audit.end()));
  }

  std::vector<LabeledExample> all;
  for (Split split : kAllSplits) {
    const auto& part = result.corpus.part(split);
    all.insert(all.end(), part.begin(), part.end());
  }
  if (absl::Status s = ValidateExamples(all); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("transformed corpus is invalid: ", s.message()));
  }

  json counts = json::object();
  for (std::string_view tier : {kTierBt, kTierNer, kTierDpLabel, kTierDpChar}) {
    auto it = touched.find(std::string(tier));
    counts[std::string(tier)] = it == touched.end() ? 0 : it->second;
  }
  result.manifest = {
      {"config", cfg.ToJson()},
      {"config_hash", HexDigest(cfg.Hash())},
      {"seed", cfg.seed},
      {"input_digest", HexDigest(CorpusDigest(corpus))},
      {"output_digest", HexDigest(CorpusDigest(result.corpus))},
      {"audit_digest", HexDigest(Fnv1a64(AuditToJsonl(result.audit)))},
      {"audit_records", result.audit.size()},
      {"tier_counts", counts},
  };
  return result;
}

absl::StatusOr<SplitCorpus> Replay(const SplitCorpus& input,
                                   std::span<const AuditRecord> audit) {
  SplitCorpus corpus = input;
  for (size_t r = 0; r < audit.size(); ++r) {
    const std::string& tier = audit[r].tier;
    if (tier != kTierBt && tier != kTierNer && tier != kTierDpChar &&
        tier != kTierDpLabel) {
      return Integrity(r, audit[r], "unknown tier");
    }
  }

  // Back-translation: replacements in place, augment copies after their
  // source in record order.
  {
    const auto index = IndexCorpus(corpus);
    std::map<std::pair<Split, size_t>, std::vector<LabeledExample>> copies;
    for (size_t r = 0; r < audit.size(); ++r) {
      const AuditRecord& record = audit[r];
      if (record.tier != kTierBt) continue;
      const bool augment = record.op.starts_with("augment:");
      if (!augment && !record.op.starts_with("replace:")) {
        return Integrity(r, record, "unknown back-translation op");
      }
      auto it = index.find(std::string(augment ? SourceId(record.id)
                                               : std::string_view(record.id)));
      if (it == index.end()) return Integrity(r, record, "id not found");
      LabeledExample& source =
          corpus.part(it->second.split)[it->second.index];
      if (source.text != record.original) {
        return Integrity(r, record, "original text does not match corpus");
      }
      if (augment) {
        LabeledExample copy = source;
        copy.id = record.id;
        copy.text = record.emitted;
        copies[{it->second.split, it->second.index}].push_back(
            std::move(copy));
      } else {
        source.text = record.emitted;
      }
    }
    if (!copies.empty()) {
      for (Split split : kAllSplits) {
        std::vector<LabeledExample> rebuilt;
        auto& part = corpus.part(split);
        for (size_t i = 0; i < part.size(); ++i) {
          rebuilt.push_back(std::move(part[i]));
          auto it = copies.find({split, i});
          if (it == copies.end()) continue;
          for (LabeledExample& copy : it->second) {
            rebuilt.push_back(std::move(copy));
          }
        }
        part = std::move(rebuilt);
      }
    }
  }

  // Masking: offsets refer to the pre-mask text, so apply right to left.
  {
    const auto index = IndexCorpus(corpus);
    std::map<std::string, std::vector<size_t>> by_id;
    for (size_t r = 0; r < audit.size(); ++r) {
      if (audit[r].tier == kTierNer) by_id[audit[r].id].push_back(r);
    }
    for (auto& [id, records] : by_id) {
      auto it = index.find(id);
      if (it == index.end()) {
        return Integrity(records.front(), audit[records.front()],
                         "id not found");
      }
      std::string& text = corpus.part(it->second.split)[it->second.index].text;
      std::stable_sort(records.begin(), records.end(), [&](size_t a, size_t b) {
        return audit[a].index > audit[b].index;
      });
      size_t limit = text.size();
      for (size_t r : records) {
        const AuditRecord& record = audit[r];
        if (record.original.empty() ||
            record.index + record.original.size() > limit) {
          return Integrity(r, record, "offset out of range");
        }
        if (text.compare(record.index, record.original.size(),
                         record.original) != 0) {
          return Integrity(r, record, "surface does not match corpus");
        }
        text.replace(record.index, record.original.size(), record.emitted);
        limit = record.index;
      }
    }
  }

  // Noise: character edits by increasing character index, then label flips.
  {
    const auto index = IndexCorpus(corpus);
    std::map<std::string, std::vector<size_t>> chars_by_id;
    for (size_t r = 0; r < audit.size(); ++r) {
      const AuditRecord& record = audit[r];
      if (record.tier == kTierDpChar) {
        chars_by_id[record.id].push_back(r);
      } else if (record.tier == kTierDpLabel) {
        auto it = index.find(record.id);
        if (it == index.end()) return Integrity(r, record, "id not found");
        if (record.op != "flip") return Integrity(r, record, "unknown op");
        LabeledExample& example =
            corpus.part(it->second.split)[it->second.index];
        if (std::to_string(LabelValue(example.label)) != record.original ||
            (record.emitted != "0" && record.emitted != "1")) {
          return Integrity(r, record, "label does not match corpus");
        }
        example.label =
            record.emitted == "1" ? Label::kPropaganda : Label::kNonPropaganda;
      }
    }
    for (const auto& [id, records] : chars_by_id) {
      auto it = index.find(id);
      if (it == index.end()) {
        return Integrity(records.front(), audit[records.front()],
                         "id not found");
      }
      std::string& text = corpus.part(it->second.split)[it->second.index].text;
      const std::vector<utf8::CodePoint> chars = utf8::Decode(text);
      std::string rebuilt;
      size_t next = 0;  // first character not yet copied
      for (size_t r : records) {
        const AuditRecord& record = audit[r];
        if (record.index >= chars.size() || record.index < next) {
          return Integrity(r, record, "character index out of range");
        }
        if (record.op != "insert" && record.op != "delete" &&
            record.op != "substitute") {
          return Integrity(r, record, "unknown op");
        }
        for (; next < record.index; ++next) {
          rebuilt.append(text, chars[next].offset, chars[next].length);
        }
        const utf8::CodePoint& c = chars[record.index];
        if (text.compare(c.offset, c.length, record.original) != 0) {
          return Integrity(r, record, "character does not match corpus");
        }
        rebuilt.append(record.emitted);
        next = record.index + 1;
      }
      for (; next < chars.size(); ++next) {
        rebuilt.append(text, chars[next].offset, chars[next].length);
      }
      text = std::move(rebuilt);
    }
  }
  return corpus;
}

absl::Status SaveTransformResult(const fs::path& dir,
                                 const TransformResult& result) {
  if (absl::Status s = SaveSplitCorpus(dir, result.corpus, result.manifest);
      !s.ok()) {
    return s;
  }
  return WriteFile(dir / "audit.jsonl", AuditToJsonl(result.audit));
}

}  // namespace textveil
