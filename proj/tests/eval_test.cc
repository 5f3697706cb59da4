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

#include "textveil/eval.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "textveil/dp_noise.h"
#include "textveil/rng.h"

namespace textveil {
namespace {

using ::testing::IsEmpty;
using ::testing::SizeIs;

uint32_t Bucket(std::string_view gram) {
  return static_cast<uint32_t>(Fnv1a64(gram) & (kNumBuckets - 1));
}

TEST(FeaturizeTest, Enumeration) {
  EXPECT_THAT(Featurize(""), IsEmpty());
  EXPECT_THAT(Featurize("ab"), IsEmpty());
  EXPECT_EQ(Featurize("aaa"), (SparseVector{{Bucket("aaa"), 1.0f}}));
  const SparseVector abcd = Featurize("abcd");
  ASSERT_THAT(abcd, SizeIs(3));
  std::set<uint32_t> expected = {Bucket("abc"), Bucket("bcd"), Bucket("abcd")};
  for (const auto& [bucket, count] : abcd) {
    EXPECT_TRUE(expected.contains(bucket));
    EXPECT_EQ(count, 1.0f);
  }
}

TEST(FeaturizeTest, LowercasesAndCounts) {
  EXPECT_EQ(Featurize("ABC"), Featurize("abc"));
  SparseVector expected = {{Bucket("aaa"), 2.0f}, {Bucket("aaaa"), 1.0f}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(Featurize("aaaa"), expected);  // aaa twice, aaaa once
}

TEST(FeaturizeTest, CodePointGrams) {
  // Three code points, six bytes: one 3-gram.
  const SparseVector v = Featurize("\xc3\xa9\xc3\xa9\xc3\xa9");
  EXPECT_EQ(v, (SparseVector{{Bucket("\xc3\xa9\xc3\xa9\xc3\xa9"), 1.0f}}));
}

TEST(MetricsTest, Formula) {
  const Metrics m = Metrics::FromCounts(3, 1, 1, 5);
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 0.75);
  EXPECT_DOUBLE_EQ(m.f1, 0.75);
  EXPECT_EQ(Metrics::FromCounts(0, 0, 0, 9).f1, 0.0);
  EXPECT_EQ(Metrics::FromCounts(0, 0, 0, 9).precision, 0.0);
  EXPECT_EQ(Metrics::FromCounts(0, 2, 0, 0).recall, 0.0);
  EXPECT_EQ(Metrics::FromCounts(4, 0, 0, 4).f1, 1.0);
}

TEST(MetricsTest, F1IsHarmonicMean) {
  RngStream stream(77);
  for (int i = 0; i < 1000; ++i) {
    const Metrics m = Metrics::FromCounts(*stream.UniformBelow(50),
                                          *stream.UniformBelow(50),
                                          *stream.UniformBelow(50), 0);
    EXPECT_GE(m.f1, 0.0);
    EXPECT_LE(m.f1, 1.0);
    if (m.precision > 0 && m.recall > 0) {
      EXPECT_NEAR(m.f1, 2 * m.precision * m.recall / (m.precision + m.recall),
                  1e-12);
    }
  }
}

std::vector<LabeledExample> Small() {
  return {{"0", "the vote is rigged, wake up", Label::kPropaganda},
          {"1", "the council met on tuesday", Label::kNonPropaganda},
          {"2", "they lie to you every day", Label::kPropaganda},
          {"3", "rain is expected this week", Label::kNonPropaganda},
          {"4", "only traitors believe them", Label::kPropaganda},
          {"5", "the library opens at nine", Label::kNonPropaganda},
          {"6", "enemies are everywhere now", Label::kPropaganda},
          {"7", "a new bridge was approved", Label::kNonPropaganda},
          {"8", "fight back before it is late", Label::kPropaganda},
          {"9", "the market closed higher", Label::kNonPropaganda}};
}

TEST(GradientTest, MatchesCentralDifferences) {
  const auto data = FeaturizeAll(Small());
  // Start away from zero so the probe sees curvature.
  TrainOptions one_epoch;
  one_epoch.epochs = 1;
  auto trained = Train(std::span<const FeaturizedExample>(data), 3, one_epoch);
  ASSERT_TRUE(trained.ok());
  Model model = *trained;
  const std::vector<double> grad = MeanGradient(model, data);
  ASSERT_EQ(grad.size(), kNumBuckets + 1);

  std::vector<uint32_t> active;
  for (const auto& e : data) {
    for (const auto& [bucket, count] : e.x) active.push_back(bucket);
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  RngStream stream(5);
  constexpr float kH = 1.0f / 128;
  int probed = 0;
  for (int i = 0; i < 30; ++i) {
    const uint32_t b = active[*stream.UniformBelow(active.size())];
    const float saved = model.weights[b];
    model.weights[b] = saved + kH;
    const double up = MeanLoss(model, data);
    model.weights[b] = saved - kH;
    const double down = MeanLoss(model, data);
    model.weights[b] = saved;
    const double numeric = (up - down) / (2 * kH);
    EXPECT_LE(std::abs(numeric - grad[b]),
              1e-4 * std::max(std::abs(grad[b]), 1e-3))
        << "bucket " << b;
    ++probed;
  }
  const float saved = model.bias;
  model.bias = saved + kH;
  const double up = MeanLoss(model, data);
  model.bias = saved - kH;
  const double down = MeanLoss(model, data);
  EXPECT_NEAR((up - down) / (2 * kH), grad.back(),
              1e-4 * std::abs(grad.back()));
  EXPECT_GE(probed, 20);
}

TEST(TrainTest, LossDecreasesOnSeparablePair) {
  const std::vector<LabeledExample> pair = {
      {"p", "wake up sheeple", Label::kPropaganda},
      {"n", "minutes of the meeting", Label::kNonPropaganda}};
  const auto data = FeaturizeAll(pair);
  double previous = MeanLoss(Model(), data);
  for (int epochs = 1; epochs <= 6; ++epochs) {
    auto model = Train(pair, 1, {.epochs = epochs, .learning_rate = 0.1});
    ASSERT_TRUE(model.ok());
    const double loss = MeanLoss(*model, data);
    EXPECT_LT(loss, previous) << epochs;
    previous = loss;
  }
}

TEST(TrainTest, BitIdentical) {
  auto examples = GenerateSynthetic(400, 1);
  ASSERT_TRUE(examples.ok());
  auto a = Train(*examples, 9, {}, 1);
  auto b = Train(*examples, 9, {}, 3);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(SerializeModel(*a), SerializeModel(*b));
  auto c = Train(*examples, 10);
  ASSERT_TRUE(c.ok());
  EXPECT_NE(SerializeModel(*a), SerializeModel(*c));
}

TEST(TrainTest, RejectsDegenerateSets) {
  EXPECT_FALSE(Train(std::span<const LabeledExample>(), 0).ok());
  const std::vector<LabeledExample> one_class = {
      {"a", "text one", Label::kPropaganda},
      {"b", "text two", Label::kPropaganda}};
  EXPECT_EQ(Train(one_class, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(TrainTest, CleanSyntheticIsLearnable) {
  auto split = SplitExamples(*GenerateSynthetic(5000, 42), SplitRatios(), 42);
  ASSERT_TRUE(split.ok());
  auto model = Train(split->train, 42);
  ASSERT_TRUE(model.ok());
  EXPECT_GE(Evaluate(*model, split->test).f1, 0.95);
}

TEST(EvaluateTest, PerfectPredictions) {
  const auto examples = Small();
  auto model = Train(examples, 0, {.epochs = 30, .learning_rate = 0.1});
  ASSERT_TRUE(model.ok());
  const Metrics m = Evaluate(*model, examples, 2);
  EXPECT_EQ(m.tp + m.fp + m.fn + m.tn, examples.size());
  EXPECT_EQ(m.f1, 1.0);
}

TEST(ModelIoTest, RoundTrip) {
  testing::TempDir dir;
  Model model;
  model.bias = -0.25f;
  model.weights[0] = 1.5f;
  model.weights[kNumBuckets - 1] = -3.0f;
  const std::string bytes = SerializeModel(model);
  EXPECT_EQ(bytes.size(), 4 + 4 + 4 + 4 * size_t{kNumBuckets});
  EXPECT_EQ(bytes.substr(0, 4), "TVLR");
  ASSERT_TRUE(SaveModel(dir / "m.bin", model).ok());
  auto loaded = LoadModel(dir / "m.bin");
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(*loaded, model);
  EXPECT_FALSE(ParseModel(bytes.substr(0, 100)).ok());
  EXPECT_FALSE(ParseModel("XXXX" + bytes.substr(4)).ok());
  EXPECT_EQ(LoadModel(dir / "absent.bin").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(EntityExposureTest, Cases) {
  const std::vector<LabeledExample> original = {
      {"a", "Marilyn from London", Label::kPropaganda},
      {"b", "no entities", Label::kNonPropaganda}};
  const Gazetteer& g = Gazetteer::Default();
  EXPECT_EQ(*EntityExposure(original, original, g), 1.0);
  std::vector<LabeledExample> masked = original;
  masked[0] = MaskExample(original[0], g).example;
  EXPECT_EQ(*EntityExposure(original, masked, g), 0.0);
  std::vector<LabeledExample> half = original;
  half[0].text = "[PERSON] from London";
  EXPECT_EQ(*EntityExposure(original, half, g), 0.5);
  const std::vector<LabeledExample> none = {{"b", "no entities",
                                             Label::kNonPropaganda}};
  EXPECT_EQ(*EntityExposure(none, none, g), 0.0);
  std::vector<LabeledExample> stranger = {{"zzz", "London", Label::kPropaganda}};
  EXPECT_FALSE(EntityExposure(original, stranger, g).ok());
}

TEST(EntityExposureTest, BackTranslatedCopiesCountAgainstSource) {
  const std::vector<LabeledExample> original = {
      {"a", "Marilyn called", Label::kPropaganda}};
  const std::vector<LabeledExample> transformed = {
      {"a", "[PERSON] called", Label::kPropaganda},
      {"a#bt-lao", "Marilyn call", Label::kPropaganda}};
  EXPECT_EQ(*EntityExposure(original, transformed, Gazetteer::Default()), 1.0);
}

TEST(FlipAuditTest, Cases) {
  auto split = SplitExamples(*GenerateSynthetic(10000, 4), SplitRatios(), 4);
  ASSERT_TRUE(split.ok());
  EXPECT_EQ(*FlipAudit(*split, *split), 0.0);
  SplitCorpus flipped = *split;
  flipped.train = FlipLabels(split->train, *Probability::Create(1.0), 1).examples;
  EXPECT_EQ(*FlipAudit(*split, flipped), 1.0);

  // Flip rate 0.05 over 10,000 training examples.
  auto big = SplitExamples(*GenerateSynthetic(10000, 4),
                           *SplitRatios::Create(1.0, 0.0, 0.0), 4);
  ASSERT_TRUE(big.ok());
  SplitCorpus noisy = *big;
  noisy.train = FlipLabels(big->train, *Probability::Create(0.05), 42).examples;
  const double fraction = *FlipAudit(*big, noisy);
  EXPECT_GE(fraction, 0.0456);
  EXPECT_LE(fraction, 0.0544);

  SplitCorpus renamed = *split;
  renamed.train[0].id = "nobody";
  EXPECT_EQ(FlipAudit(*split, renamed).status().code(),
            absl::StatusCode::kDataLoss);
}

}  // namespace
}  // namespace textveil
