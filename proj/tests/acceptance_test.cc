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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "test_util.h"
#include "textveil/cli.h"
#include "textveil/corpus.h"
#include "textveil/dp_noise.h"
#include "textveil/eval.h"
#include "textveil/io.h"
#include "textveil/ner_mask.h"
#include "textveil/pipeline.h"
#include "textveil/rng.h"
#include "textveil/sweep.h"

namespace textveil {
namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string F(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

SplitCorpus Synthetic(size_t n, uint64_t seed) {
  return *SplitExamples(*GenerateSynthetic(n, seed), SplitRatios(), seed);
}

int Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "textveil");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string Read(const std::filesystem::path& path) {
  absl::StatusOr<std::string> contents = ReadFile(path);
  return contents.ok() ? *contents : "<missing>";
}

Outcome Prng() {
  constexpr uint64_t kExpected[8] = {
      0xE220A8397B1DCDAFULL, 0x6E789E6AA1B965F4ULL, 0x06C45D188009454FULL,
      0xF88BB8A8724C81ECULL, 0x1B39896A51A8749BULL, 0x53CB9F0C747EA2EAULL,
      0x2C829ABE1F4532E1ULL, 0xC584133AC916AB3CULL};
  RngStream stream(0);
  int matched = 0;
  for (uint64_t want : kExpected) matched += stream.NextU64() == want;
  const bool fnv = Fnv1a64("") == 0xCBF29CE484222325ULL;
  return {matched == 8 && fnv,
          absl::StrCat(matched, "/8 SplitMix64 values match, FNV-1a-64(\"\") ",
                       fnv ? "ok" : "wrong")};
}

Outcome Determinism() {
  testing::TempDir dir;
  const auto start = Clock::now();
  if (Cli({"synth", "--n", "5000", "--seed", "42", "--out",
           (dir / "in").string()}) != kExitOk ||
      !WriteFile(dir / "cfg.json",
                 R"({"tiers": ["BT", "NER", "DP"], "noise": {"rate": 0.05},)"
                 R"( "seed": 42})")
           .ok()) {
    return {false, "setup failed"};
  }
  for (const char* out : {"a", "b"}) {
    if (Cli({"transform", "--corpus", (dir / "in").string(), "--config",
             (dir / "cfg.json").string(), "--out", (dir / out).string()}) !=
        kExitOk) {
      return {false, "transform failed"};
    }
  }
  const double elapsed = Seconds(start);
  int identical = 0;
  const std::vector<std::string> files = {"train.jsonl", "dev.jsonl",
                                          "test.jsonl", "audit.jsonl",
                                          "manifest.json"};
  for (const std::string& f : files) {
    identical += Read(dir / "a" / f) == Read(dir / "b" / f) &&
                 Read(dir / "a" / f) != "<missing>";
  }
  return {identical == 5 && elapsed < 10.0,
          absl::StrCat(identical, "/5 artifacts byte-identical, ",
                       F(elapsed, 2), " s for synth + 2 transforms")};
}

Outcome ZeroNoiseIdentity() {
  const SplitCorpus corpus = Synthetic(5000, 42);
  TransformConfig cfg;
  cfg.tiers = {Tier::kDp};
  cfg.noise.rate = 0.0;
  cfg.seed = 42;
  auto result = RunPipeline(corpus, cfg);
  if (!result.ok()) return {false, std::string(result.status().message())};
  const uint64_t in = CorpusDigest(corpus);
  const uint64_t out = CorpusDigest(result->corpus);
  return {in == out, absl::StrCat("input ", HexDigest(in), ", output ",
                                  HexDigest(out))};
}

Outcome FlipCalibration() {
  // floor(0.6 * 16667) = 10000 train examples.
  const SplitCorpus corpus = Synthetic(16667, 42);
  NoiseConfig cfg;
  cfg.rate = 0.05;
  cfg.apply_to = {Split::kTrain};
  auto noised = ApplyDp(corpus, cfg, 42);
  if (!noised.ok()) return {false, std::string(noised.status().message())};
  auto fraction = FlipAudit(corpus, noised->corpus);
  if (!fraction.ok()) return {false, std::string(fraction.status().message())};
  bool held_out_clean = true;
  for (Split s : {Split::kDev, Split::kTest}) {
    for (size_t i = 0; i < corpus.part(s).size(); ++i) {
      held_out_clean &=
          corpus.part(s)[i].label == noised->corpus.part(s)[i].label;
    }
  }
  return {corpus.train.size() == 10000 && *fraction >= 0.0456 &&
              *fraction <= 0.0544 && held_out_clean,
          absl::StrCat("flip fraction ", F(*fraction), " over ",
                       corpus.train.size(), " train examples, dev/test labels ",
                       held_out_clean ? "unchanged" : "CHANGED")};
}

Outcome OpCalibration() {
  const std::string text(1000, 'x');
  const Probability rate = *Probability::Create(0.20);
  double chars = 0, emitted = 0;
  double counts[3] = {0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    const std::string id = absl::StrCat("c", i);
    RngStream stream = DeriveStream(42, id, StreamTag::kDpChar);
    auto out = PerturbChars(text, rate, kAsciiLetters, stream, id);
    if (!out.ok()) return {false, std::string(out.status().message())};
    chars += text.size();
    emitted += out->text.size();
    for (const AuditRecord& r : out->audit) {
      counts[r.op == "insert" ? 0 : r.op == "delete" ? 1 : 2] += 1;
    }
  }
  bool pass = std::abs(emitted / chars - 1.0) <= 0.005;
  std::string detail = absl::StrCat(static_cast<uint64_t>(chars), " chars; freq");
  for (double c : counts) {
    pass &= std::abs(c / chars - 0.2 / 3) <= 0.001;
    absl::StrAppend(&detail, " ", F(c / chars));
  }
  absl::StrAppend(&detail, " (ins/del/sub); length ratio ",
                  F(emitted / chars));
  return {pass, detail};
}

Outcome MaskingSoundness() {
  const SplitCorpus corpus = Synthetic(5000, 42);
  TransformConfig cfg;
  cfg.tiers = {Tier::kNer};
  cfg.seed = 42;
  auto result = RunPipeline(corpus, cfg);
  if (!result.ok()) return {false, std::string(result.status().message())};
  auto exposure = EntityExposure(corpus, result->corpus, Gazetteer::Default());
  if (!exposure.ok()) return {false, std::string(exposure.status().message())};

  auto texts = GenerateSynthetic(1000, 7);
  int idempotent = 0;
  for (const LabeledExample& e : *texts) {
    const LabeledExample once = MaskExample(e, Gazetteer::Default()).example;
    idempotent += MaskExample(once, Gazetteer::Default()).example == once;
  }
  return {*exposure == 0.0 && idempotent == 1000,
          absl::StrCat("exposure ", F(*exposure), ", idempotent on ",
                       idempotent, "/1000 texts")};
}


Outcome TrendReproduction() {
  const auto start = Clock::now();
  const SplitCorpus corpus = Synthetic(5000, 42);
  SweepOptions options;
  const std::vector<TierSet> swept = {{Tier::kDp},
                                      {Tier::kBt, Tier::kNer, Tier::kDp}};
  options.tier_sets = WithReferenceRows(swept);
  options.seed = 42;
  auto rows = RunSweep(corpus, options, 4);
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  const double elapsed = Seconds(start);
  if (rows->size() != 11) return {false, "unexpected row count"};

  const double base = (*rows)[0].test_f1;
  const double ner = (*rows)[2].test_f1;
  std::vector<double> dp = {base};
  for (size_t i = 3; i < 7; ++i) dp.push_back((*rows)[i].test_f1);
  const double combined_20 = (*rows)[10].test_f1;
  int inversions = 0;
  bool small = true;
  for (size_t i = 1; i < dp.size(); ++i) {
    if (dp[i] > dp[i - 1]) {
      ++inversions;
      small &= dp[i] - dp[i - 1] <= 0.01;
    }
  }
  const bool a = base >= 0.95;
  const bool b = inversions <= 1 && small;
  const bool c = combined_20 <= base - 0.05;
  const bool d = std::abs(ner - base) <= 0.02;
  std::string detail = absl::StrCat(
      "(a) baseline ", F(base), a ? " ok" : " FAIL", "; (b) DP", "");
  for (double v : dp) absl::StrAppend(&detail, " ", F(v, 3));
  absl::StrAppend(&detail, b ? " ok" : " FAIL", "; (c) combined@0.20 ",
                  F(combined_20), c ? " ok" : " FAIL", "; (d) NER ", F(ner),
                  d ? " ok" : " FAIL", "; ", F(elapsed, 1), " s");
  return {a && b && c && d && elapsed < 120.0, detail};
}

Outcome GradientCheck() {
  const std::vector<LabeledExample> examples = {
      {"0", "the vote is rigged, wake up", Label::kPropaganda},
      {"1", "the council met on tuesday", Label::kNonPropaganda},
      {"2", "they lie to you every day", Label::kPropaganda},
      {"3", "rain is expected this week", Label::kNonPropaganda},
      {"4", "only traitors believe them", Label::kPropaganda},
      {"5", "the library opens at nine", Label::kNonPropaganda},
      {"6", "enemies are everywhere now", Label::kPropaganda},
      {"7", "a new bridge was approved", Label::kNonPropaganda},
      {"8", "fight back before it is late", Label::kPropaganda},
      {"9", "the market closed higher", Label::kNonPropaganda}};
  const auto data = FeaturizeAll(examples);
  auto trained =
      Train(std::span<const FeaturizedExample>(data), 3, {.epochs = 1});
  if (!trained.ok()) return {false, std::string(trained.status().message())};
  Model model = *trained;
  const std::vector<double> grad = MeanGradient(model, data);
  std::vector<uint32_t> active;
  for (const auto& e : data) {
    for (const auto& [bucket, count] : e.x) active.push_back(bucket);
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());

  RngStream stream(11);
  constexpr float kH = 1.0f / 128;
  int probed = 0, within = 0;
  double worst = 0;
  for (int i = 0; i < 25; ++i) {
    const uint32_t b = active[*stream.UniformBelow(active.size())];
    const float saved = model.weights[b];
    model.weights[b] = saved + kH;
    const double up = MeanLoss(model, data);
    model.weights[b] = saved - kH;
    const double down = MeanLoss(model, data);
    model.weights[b] = saved;
    const double numeric = (up - down) / (2 * kH);
    const double rel = std::abs(numeric - grad[b]) / std::abs(grad[b]);
    worst = std::max(worst, rel);
    ++probed;
    within += rel <= 1e-4;
  }
  return {probed >= 20 && within == probed,
          absl::StrCat(within, "/", probed,
                       " probed weights within 1e-4, worst relative error ",
                       worst)};
}

Outcome AuditReplay() {
  const SplitCorpus corpus = Synthetic(200, 9);
  RngStream choices(50);
  const auto coin = [&] { return *choices.UniformBelow(2) == 1; };
  int exact = 0;
  for (int trial = 0; trial < 50; ++trial) {
    TransformConfig cfg;
    for (Tier t : {Tier::kBt, Tier::kNer, Tier::kDp}) {
      if (coin()) cfg.tiers.insert(t);
    }
    cfg.seed = choices.NextU64();
    cfg.noise.rate = 0.05 * (1 + *choices.UniformBelow(4));
    cfg.noise.flip_labels = coin();
    if (coin()) cfg.noise.apply_to = {Split::kTrain, Split::kDev, Split::kTest};
    if (coin()) cfg.noise.unit = NoiseUnit::kExamples;
    if (coin()) cfg.bt_mode = BtMode::kAugment;
    if (coin()) cfg.bt_apply_to = {Split::kTrain, Split::kDev};
    auto result = RunPipeline(corpus, cfg, 2);
    if (!result.ok()) continue;
    auto log = ParseAuditJsonl(AuditToJsonl(result->audit));
    if (!log.ok()) continue;
    auto replayed = Replay(corpus, *log);
    exact += replayed.ok() &&
             CorpusDigest(*replayed) == CorpusDigest(result->corpus) &&
             *replayed == result->corpus;
  }
  return {exact == 50,
          absl::StrCat(exact, "/50 random configs replayed byte-exactly")};
}

Outcome ReportStructure() {
  testing::TempDir dir;
  if (Cli({"synth", "--n", "5000", "--seed", "42", "--out",
           (dir / "in").string()}) != kExitOk ||
      Cli({"sweep", "--corpus", (dir / "in").string(), "--seed", "42",
           "--out", (dir / "r.csv").string()}) != kExitOk) {
    return {false, "sweep verb failed"};
  }
  auto rows = ParseSweepCsv(Read(dir / "r.csv"));
  if (!rows.ok()) return {false, std::string(rows.status().message())};
  const std::vector<std::string> expected = {
      "Direct Fine-tune",
      "Adversarial Defense (Back Translation)",
      "NER Masking",
      "DP (noise = 0.05)",
      "DP (noise = 0.10)",
      "DP (noise = 0.15)",
      "DP (noise = 0.20)",
      "BT, NER, DP (noise = 0.05)",
      "BT, NER, DP (noise = 0.10)",
      "BT, NER, DP (noise = 0.15)",
      "BT, NER, DP (noise = 0.20)"};
  std::vector<std::string> got;
  for (const SweepRow& row : *rows) got.push_back(row.procedure);
  return {got == expected,
          absl::StrCat(got.size(), " rows in the default-grid report")};
}

}  // namespace
}  // namespace textveil

int main() {
  using textveil::Outcome;
  struct Criterion {
    int number;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "PRNG conformance", textveil::Prng},
      {2, "end-to-end determinism", textveil::Determinism},
      {3, "identity at zero noise", textveil::ZeroNoiseIdentity},
      {4, "label-flip calibration", textveil::FlipCalibration},
      {5, "perturbation-op calibration", textveil::OpCalibration},
      {6, "masking soundness", textveil::MaskingSoundness},
      {7, "trend reproduction", textveil::TrendReproduction},
      {8, "gradient correctness", textveil::GradientCheck},
      {9, "audit replay", textveil::AuditReplay},
      {10, "sweep report structure", textveil::ReportStructure},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const Outcome outcome = c.run();
    failures += !outcome.pass;
    std::printf("%s criterion %d (%s): %s\n", outcome.pass ? "PASS" : "FAIL",
                c.number, c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
