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

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "textveil/io.h"
#include "textveil/rng.h"

namespace textveil {
namespace {

using ::testing::HasSubstr;
using ::testing::IsEmpty;

SplitCorpus Synthetic(size_t n, uint64_t seed = 42) {
  return *SplitExamples(*GenerateSynthetic(n, seed), SplitRatios(), seed);
}

TransformConfig Config(std::set<Tier> tiers, double rate = 0.05,
                       uint64_t seed = 42) {
  TransformConfig cfg;
  cfg.tiers = std::move(tiers);
  cfg.noise.rate = rate;
  cfg.seed = seed;
  return cfg;
}

TEST(RunPipelineTest, NoTiersIsIdentity) {
  const SplitCorpus corpus = Synthetic(200);
  auto result = RunPipeline(corpus, Config({}));
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->corpus, corpus);
  EXPECT_THAT(result->audit, IsEmpty());
  EXPECT_EQ(result->manifest["input_digest"],
            result->manifest["output_digest"]);
}

TEST(RunPipelineTest, NerOnlyMatchesMaskExample) {
  const SplitCorpus corpus = Synthetic(200);
  auto result = RunPipeline(corpus, Config({Tier::kNer}));
  ASSERT_TRUE(result.ok());
  for (Split s : kAllSplits) {
    ASSERT_EQ(result->corpus.part(s).size(), corpus.part(s).size());
    for (size_t i = 0; i < corpus.part(s).size(); ++i) {
      EXPECT_EQ(result->corpus.part(s)[i],
                MaskExample(corpus.part(s)[i], Gazetteer::Default()).example);
    }
  }
}

TEST(RunPipelineTest, ListingOrderDoesNotMatter) {
  const SplitCorpus corpus = Synthetic(200);
  auto listed = TransformConfig::FromJson(
      nlohmann::json::parse(R"({"tiers": ["DP", "BT", "NER"], "seed": 3})"));
  auto canonical = TransformConfig::FromJson(
      nlohmann::json::parse(R"({"tiers": ["bt", "ner", "dp"], "seed": 3})"));
  ASSERT_TRUE(listed.ok() && canonical.ok());
  EXPECT_EQ(listed->Hash(), canonical->Hash());
  auto a = RunPipeline(corpus, *listed);
  auto b = RunPipeline(corpus, *canonical);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->corpus, b->corpus);
  EXPECT_EQ(a->audit, b->audit);
}

TEST(RunPipelineTest, MasksBeforeNoise) {
  SplitCorpus corpus;
  corpus.train = {{"a", "Marilyn from London is calling the show.",
                   Label::kPropaganda},
                  {"b", "Nothing here.", Label::kNonPropaganda}};
  auto result = RunPipeline(corpus, Config({Tier::kDp, Tier::kNer}, 0.0));
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->corpus.train[0].text,
            "[PERSON] from [GPE] is calling the show.");
}

TEST(RunPipelineTest, WorkerCountDoesNotMatter) {
  const SplitCorpus corpus = Synthetic(600);
  const TransformConfig cfg = Config({Tier::kBt, Tier::kNer, Tier::kDp}, 0.1);
  auto one = RunPipeline(corpus, cfg, 1);
  auto many = RunPipeline(corpus, cfg, 5);
  ASSERT_TRUE(one.ok() && many.ok());
  EXPECT_EQ(one->corpus, many->corpus);
  EXPECT_EQ(one->audit, many->audit);
  EXPECT_EQ(one->manifest, many->manifest);
}

TEST(RunPipelineTest, ManifestContents) {
  const SplitCorpus corpus = Synthetic(200);
  const TransformConfig cfg = Config({Tier::kBt, Tier::kNer, Tier::kDp});
  auto result = RunPipeline(corpus, cfg);
  ASSERT_TRUE(result.ok());
  const nlohmann::json& m = result->manifest;
  EXPECT_EQ(m["config_hash"], HexDigest(cfg.Hash()));
  EXPECT_EQ(m["seed"], 42);
  EXPECT_EQ(m["input_digest"], HexDigest(CorpusDigest(corpus)));
  EXPECT_EQ(m["output_digest"], HexDigest(CorpusDigest(result->corpus)));
  EXPECT_EQ(m["audit_records"], result->audit.size());
  EXPECT_TRUE(m["tier_counts"].contains("ner"));
}

// Frozen from the implementation once its primitives matched the reference
// oracle; any change here changes every downstream artifact.
TEST(RunPipelineTest, GoldenDigest) {
  const SplitCorpus corpus = Synthetic(5000);
  auto result =
      RunPipeline(corpus, Config({Tier::kBt, Tier::kNer, Tier::kDp}, 0.05));
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(HexDigest(CorpusDigest(result->corpus)), "3bfb6ebabf869363");
}

TEST(RunPipelineTest, BtAugmentKeepsCopiesBesideSource) {
  const SplitCorpus corpus = Synthetic(50);
  TransformConfig cfg = Config({Tier::kBt});
  cfg.bt_mode = BtMode::kAugment;
  auto result = RunPipeline(corpus, cfg);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->corpus.train.size(), corpus.train.size() * 6);
  EXPECT_EQ(result->corpus.train[0], corpus.train[0]);
  EXPECT_EQ(result->corpus.train[1].id, corpus.train[0].id + "#bt-xhosa");
  EXPECT_EQ(result->corpus.dev, corpus.dev);
}

TEST(ReplayTest, EmptyAuditIsIdentity) {
  const SplitCorpus corpus = Synthetic(100);
  auto replayed = Replay(corpus, {});
  ASSERT_TRUE(replayed.ok());
  EXPECT_EQ(*replayed, corpus);
}

TEST(ReplayTest, ReproducesRandomConfigs) {
  const SplitCorpus corpus = Synthetic(300, 5);
  RngStream choices(2024);
  const auto coin = [&] { return *choices.UniformBelow(2) == 1; };
  for (int trial = 0; trial < 24; ++trial) {
    TransformConfig cfg;
    for (Tier t : {Tier::kBt, Tier::kNer, Tier::kDp}) {
      if (coin()) cfg.tiers.insert(t);
    }
    cfg.seed = choices.NextU64();
    cfg.noise.rate = 0.05 * (1 + *choices.UniformBelow(4));
    cfg.noise.flip_labels = coin();
    if (coin()) cfg.noise.apply_to = {Split::kTrain, Split::kDev};
    if (coin()) cfg.noise.unit = NoiseUnit::kExamples;
    if (coin()) cfg.bt_mode = BtMode::kAugment;
    if (coin()) cfg.bt_apply_to = {Split::kTrain, Split::kDev};
    auto result = RunPipeline(corpus, cfg, 2);
    ASSERT_TRUE(result.ok()) << result.status();
    auto replayed = Replay(corpus, result->audit);
    ASSERT_TRUE(replayed.ok()) << replayed.status();
    EXPECT_EQ(*replayed, result->corpus) << cfg.ToJson().dump();
    auto reparsed = ParseAuditJsonl(AuditToJsonl(result->audit));
    ASSERT_TRUE(reparsed.ok());
    EXPECT_EQ(*reparsed, result->audit);
  }
}

TEST(ReplayTest, CorruptedRecordsAreDataLoss) {
  const SplitCorpus corpus = Synthetic(200);
  auto result =
      RunPipeline(corpus, Config({Tier::kBt, Tier::kNer, Tier::kDp}, 0.1));
  ASSERT_TRUE(result.ok());
  for (std::string_view tier : {kTierNer, kTierDpChar}) {
    AuditLog bad = result->audit;
    auto it = std::find_if(bad.begin(), bad.end(),
                           [&](const AuditRecord& r) { return r.tier == tier; });
    ASSERT_NE(it, bad.end());
    it->index += 100000;
    auto replayed = Replay(corpus, bad);
    ASSERT_FALSE(replayed.ok()) << tier;
    EXPECT_EQ(replayed.status().code(), absl::StatusCode::kDataLoss);
    EXPECT_THAT(replayed.status().message(), HasSubstr(it->id));
  }
  AuditLog unknown = result->audit;
  unknown.front().id = "no-such-example";
  EXPECT_EQ(Replay(corpus, unknown).status().code(),
            absl::StatusCode::kDataLoss);
}

TEST(TransformConfigTest, ParsesFullConfig) {
  auto cfg = TransformConfig::FromJson(nlohmann::json::parse(R"({
    "tiers": ["NER", "DP"],
    "noise": {"rate": 0.1, "unit": "examples", "apply_to": ["train", "dev"],
              "flip_labels": false},
    "bt": {"mode": "augment", "pivots": ["lao"]},
    "ner": {"gazetteer": "default", "case_sensitive": false},
    "seed": 7
  })"));
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  EXPECT_EQ(cfg->tiers, (std::set<Tier>{Tier::kNer, Tier::kDp}));
  EXPECT_DOUBLE_EQ(cfg->noise.rate, 0.1);
  EXPECT_EQ(cfg->noise.unit, NoiseUnit::kExamples);
  EXPECT_FALSE(cfg->noise.flip_labels);
  EXPECT_EQ(cfg->bt_mode, BtMode::kAugment);
  EXPECT_EQ(cfg->pivots, std::vector<std::string>{"lao"});
  EXPECT_FALSE(cfg->case_sensitive);
  EXPECT_EQ(cfg->seed, 7u);
  auto again = TransformConfig::FromJson(cfg->ToJson());
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->Hash(), cfg->Hash());
}

TEST(TransformConfigTest, RejectsBadConfigs) {
  for (const char* text : {
           R"({"tiers": ["XX"]})",
           R"({"tierz": []})",
           R"({"noise": {"rate": 2}})",
           R"({"noise": {"unit": "words"}})",
           R"({"bt": {"mode": "sideways"}})",
           R"({"tiers": ["BT"], "bt": {"pivots": []}})",
           R"({"bt": {"apply_to": ["test"]}})",
           R"({"seed": -1})",
           R"({"seed": "x"})",
       }) {
    EXPECT_FALSE(TransformConfig::FromJson(nlohmann::json::parse(text)).ok())
        << text;
  }
}

TEST(LoadResourcesTest, MissingFilesFailFast) {
  TransformConfig cfg = Config({Tier::kBt, Tier::kNer});
  cfg.pivots = {"/nonexistent/lexicon.json"};
  EXPECT_FALSE(LoadResources(cfg).ok());
  cfg = Config({Tier::kNer});
  cfg.gazetteer = "/nonexistent/gazetteer.jsonl";
  EXPECT_FALSE(LoadResources(cfg).ok());
  cfg.tiers = {};
  EXPECT_TRUE(LoadResources(cfg).ok());
}

TEST(LoadResourcesTest, RelativePathsResolveAgainstConfig) {
  testing::TempDir dir;
  ASSERT_TRUE(WriteFile(dir / "g.jsonl",
                        "{\"surface\":\"Zed\",\"category\":\"PER\"}\n")
                  .ok());
  ASSERT_TRUE(WriteFile(dir / "cfg.json",
                        R"({"tiers":["NER"],"ner":{"gazetteer":"g.jsonl"}})")
                  .ok());
  auto cfg = TransformConfig::Load(dir / "cfg.json");
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  SplitCorpus corpus;
  corpus.train = {{"a", "Zed met Marilyn.", Label::kPropaganda}};
  auto result = RunPipeline(corpus, *cfg);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->corpus.train[0].text, "[PERSON] met Marilyn.");
}

TEST(SaveTransformResultTest, WritesAudit) {
  testing::TempDir dir;
  const SplitCorpus corpus = Synthetic(100);
  auto result = RunPipeline(corpus, Config({Tier::kNer, Tier::kDp}));
  ASSERT_TRUE(result.ok());
  ASSERT_TRUE(SaveTransformResult(dir.path(), *result).ok());
  auto audit = LoadAudit(dir / "audit.jsonl");
  ASSERT_TRUE(audit.ok());
  EXPECT_EQ(*audit, result->audit);
  auto loaded = LoadSplitCorpus(dir.path());
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(*loaded, result->corpus);
}

}  // namespace
}  // namespace textveil
