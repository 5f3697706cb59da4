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

#include <set>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace textveil {
namespace {

using ::testing::IsEmpty;
using ::testing::SizeIs;

PivotLexicon Toy() {
  return *PivotLexicon::Create("toy", {{"calling", "X1"}, {"phoning", "X1"},
                                       {"call", "X1"}},
                               {{"X1", "call"}});
}

TEST(PivotLexiconTest, ToyCollapse) {
  const PivotLexicon toy = Toy();
  EXPECT_EQ(RoundTrip("calling", toy), "call");
  EXPECT_EQ(RoundTrip("phoning", toy), "call");
  EXPECT_EQ(RoundTrip("Phoning!", toy), "Call!");
  EXPECT_EQ(RoundTrip("  no   mapped\twords ", toy), "no mapped words");
}

TEST(PivotLexiconTest, RejectsInconsistentMaps) {
  EXPECT_FALSE(PivotLexicon::Create("x", {{"a", "P"}}, {}).ok());
  EXPECT_FALSE(
      PivotLexicon::Create("x", {{"calling", "P"}}, {{"P", "call"}}).ok());
  EXPECT_FALSE(
      PivotLexicon::Create("x", {{"Call", "P"}}, {{"P", "Call"}}).ok());
}

TEST(PivotLexiconTest, BuiltinsAndJson) {
  const std::vector<PivotLexicon> all = PivotLexicon::AllBuiltins();
  ASSERT_THAT(all, SizeIs(5));
  for (const PivotLexicon& lexicon : all) {
    auto parsed = PivotLexicon::FromJson(lexicon.ToJson());
    ASSERT_TRUE(parsed.ok()) << parsed.status();
    EXPECT_EQ(parsed->forward(), lexicon.forward());
    EXPECT_EQ(parsed->backward(), lexicon.backward());
    EXPECT_EQ(parsed->name(), lexicon.name());
  }
  EXPECT_FALSE(PivotLexicon::Builtin("klingon").ok());
}

TEST(RoundTripTest, XhosaGolden) {
  auto xhosa = PivotLexicon::Builtin("xhosa");
  ASSERT_TRUE(xhosa.ok());
  EXPECT_EQ(
      RoundTrip("Marilyn from London is calling the RolandMartinShow.", *xhosa),
      "Marilyn from London is call the RolandMartinShow.");
}

TEST(RoundTripTest, IdempotentAndCanonical) {
  auto examples = GenerateSynthetic(400, 3);
  ASSERT_TRUE(examples.ok());
  for (const PivotLexicon& lexicon : PivotLexicon::AllBuiltins()) {
    std::set<std::string> canonical;
    for (const auto& [pivot, word] : lexicon.backward()) canonical.insert(word);
    for (const LabeledExample& e : *examples) {
      const std::string once = RoundTrip(e.text, lexicon);
      EXPECT_EQ(RoundTrip(once, lexicon), once);
      std::string lower = once;
      for (char& c : lower) c = static_cast<char>(std::tolower(c));
      for (const auto& [word, pivot] : lexicon.forward()) {
        if (canonical.contains(word)) continue;
        EXPECT_EQ((" " + lower + " ").find(" " + word + " "),
                  std::string::npos)
            << lexicon.name() << ": " << once;
      }
    }
  }
}

TEST(RoundTripTest, ChangesEnoughSyntheticTexts) {
  auto examples = GenerateSynthetic(1000, 42);
  ASSERT_TRUE(examples.ok());
  for (const PivotLexicon& lexicon : PivotLexicon::AllBuiltins()) {
    int changed = 0;
    for (const LabeledExample& e : *examples) {
      if (RoundTrip(e.text, lexicon) != e.text) ++changed;
    }
    EXPECT_GE(changed, 300) << lexicon.name();
  }
}

TEST(LexiconTranslatorTest, MatchesRoundTrip) {
  auto xhosa = PivotLexicon::Builtin("xhosa");
  ASSERT_TRUE(xhosa.ok());
  LexiconTranslator translator({*xhosa});
  const std::string text = "They are calling and phoning.";
  auto out = translator.RoundTrip(text, kSourceLanguage, "xhosa");
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(*out, RoundTrip(text, *xhosa));
  auto chained = translator.Translator::RoundTrip(text, kSourceLanguage,
                                                  "xhosa");
  ASSERT_TRUE(chained.ok()) << chained.status();
  EXPECT_EQ(*chained, *out);
  EXPECT_FALSE(translator.RoundTrip(text, kSourceLanguage, "lao").ok());
}

TEST(BackTranslateExampleTest, Cardinality) {
  const std::vector<PivotLexicon> pivots = PivotLexicon::AllBuiltins();
  const LabeledExample example{"e1", "They keep calling the station.",
                               Label::kPropaganda};
  auto replaced =
      BackTranslateExample(example, pivots, BtMode::kReplace, 42);
  ASSERT_TRUE(replaced.ok());
  ASSERT_THAT(replaced->examples, SizeIs(1));
  EXPECT_EQ(replaced->examples[0].id, "e1");
  EXPECT_EQ(replaced->examples[0].label, Label::kPropaganda);

  auto augmented =
      BackTranslateExample(example, pivots, BtMode::kAugment, 42);
  ASSERT_TRUE(augmented.ok());
  ASSERT_THAT(augmented->examples, SizeIs(6));
  EXPECT_EQ(augmented->examples[0], example);
  EXPECT_THAT(augmented->audit, SizeIs(5));
  for (size_t i = 1; i < 6; ++i) {
    EXPECT_EQ(augmented->examples[i].id,
              "e1#bt-" + pivots[i - 1].name());
    EXPECT_EQ(SourceId(augmented->examples[i].id), "e1");
    EXPECT_EQ(augmented->examples[i].label, Label::kPropaganda);
  }
}

TEST(BackTranslateExampleTest, Deterministic) {
  const std::vector<PivotLexicon> pivots = PivotLexicon::AllBuiltins();
  auto examples = GenerateSynthetic(100, 8);
  ASSERT_TRUE(examples.ok());
  std::set<std::string> used;
  for (const LabeledExample& e : *examples) {
    auto a = BackTranslateExample(e, pivots, BtMode::kReplace, 9);
    auto b = BackTranslateExample(e, pivots, BtMode::kReplace, 9);
    ASSERT_TRUE(a.ok() && b.ok());
    EXPECT_EQ(a->examples, b->examples);
    EXPECT_EQ(a->audit, b->audit);
    for (const AuditRecord& r : a->audit) used.insert(r.op);
  }
  EXPECT_GE(used.size(), 4u);
}

TEST(BackTranslateExampleTest, EmptyPivots) {
  const LabeledExample example{"e", "text", Label::kPropaganda};
  EXPECT_EQ(BackTranslateExample(example, std::span<const PivotLexicon>(),
                                 BtMode::kReplace, 0)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(BackTranslateExampleTest, UnchangedTextHasNoAudit) {
  const LabeledExample example{"e", "Marilyn from London.",
                               Label::kPropaganda};
  auto out = BackTranslateExample(example, PivotLexicon::AllBuiltins(),
                                  BtMode::kReplace, 0);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->examples[0], example);
  EXPECT_THAT(out->audit, IsEmpty());
}

TEST(LoadTest, DataFilesParse) {
  for (const PivotLexicon& builtin : PivotLexicon::AllBuiltins()) {
    auto loaded = PivotLexicon::Load(std::filesystem::path(TEXTVEIL_SOURCE_DIR) /
                                     "data/lexicons" / (builtin.name() + ".json"));
    ASSERT_TRUE(loaded.ok()) << loaded.status();
    EXPECT_EQ(loaded->forward(), builtin.forward());
  }
}

}  // namespace
}  // namespace textveil
