// Copyright 2026 The SpyGame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "spygame/deep.h"
#include "spygame/error.h"
#include "spygame/llm.h"
#include "support.h"

namespace spygame {
namespace {

const char* kBatman =
    "Batman is a fictional superhero who fights crime in Gotham City using "
    "detective skills, martial arts and gadgets instead of superpowers.";

TEST(DescribeAggressive, ReturnsScriptedBlurb) {
  auto model = MockChatModel::queue({kBatman});
  Description d = describe_aggressive(*model, "Batman");
  EXPECT_EQ(d.text, kBatman);
  EXPECT_EQ(d.mode, DeepMode::kAggressive);
  EXPECT_EQ(d.word_limit, 100);
  EXPECT_FALSE(d.over_limit);
  EXPECT_FALSE(d.empty);
}

TEST(DescribeAggressive, EmptyRepliesRepromptOnceThenFlag) {
  auto model = MockChatModel::queue({"", " "});
  Description d = describe_aggressive(*model, "Batman");
  EXPECT_TRUE(d.empty);
  EXPECT_EQ(model->calls(), 2u);
}

TEST(DescribeAggressive, BracesInWordRenderSafely) {
  auto model = MockChatModel::echo();
  Description d = describe_aggressive(*model, "{weird}}word");
  EXPECT_NE(d.text.find("{weird}}word"), std::string::npos);
}

TEST(DescribeAggressive, OverLimitIsCounted) {
  std::string long_text;
  for (int i = 0; i < 101; ++i) long_text += "word ";
  auto model = MockChatModel::queue({long_text});
  Description d = describe_aggressive(*model, "x");
  EXPECT_EQ(d.word_count, 101);
  EXPECT_TRUE(d.over_limit);
}

TEST(DescribeConservative, TwoStepsWithCandidates) {
  auto model = MockChatModel::queue({"Superman, Spider-Man", "A fictional superhero with gadgets"});
  Description d = describe_conservative(*model, "Batman");
  EXPECT_EQ(d.mode, DeepMode::kConservative);
  EXPECT_EQ(d.candidates, (std::vector<std::string>{"Superman", "Spider-Man"}));
  EXPECT_FALSE(d.candidates_empty);
  EXPECT_EQ(d.text, "A fictional superhero with gadgets");
  EXPECT_EQ(d.word_limit, 10);
  EXPECT_FALSE(d.over_limit);
}

TEST(DescribeConservative, EmptyCandidatesStillDescribes) {
  auto model = MockChatModel::queue({"", "Something from comics"});
  Description d = describe_conservative(*model, "Batman");
  EXPECT_TRUE(d.candidates.empty());
  EXPECT_TRUE(d.candidates_empty);
  EXPECT_EQ(d.text, "Something from comics");
}

TEST(DescribeConservative, CandidateListFormats) {
  auto model = MockChatModel::queue({"1. Superman\n2. Spider-Man;\n- Iron Man.", "x"});
  Description d = describe_conservative(*model, "Batman");
  EXPECT_EQ(d.candidates, (std::vector<std::string>{"Superman", "Spider-Man", "Iron Man"}));
}

TEST(DescribeConservative, DeterministicMockRerun) {
  auto a = MockChatModel::heuristic();
  auto b = MockChatModel::heuristic();
  Description x = describe_conservative(*a, "Batman");
  Description y = describe_conservative(*b, "Batman");
  EXPECT_EQ(x.candidates_raw, y.candidates_raw);
  EXPECT_EQ(x.text, y.text);
}

TEST(ParseJudgement, Forms) {
  EXPECT_EQ(parse_judgement("4"), 4);
  EXPECT_EQ(parse_judgement("Score: 5."), 5);
  EXPECT_EQ(parse_judgement("I'd say 3 out of 5"), 3);
  EXPECT_EQ(parse_judgement("seven"), std::nullopt);
  EXPECT_EQ(parse_judgement("0 or 6"), std::nullopt);
  EXPECT_EQ(parse_judgement("15"), std::nullopt);
}

TEST(JudgeMatch, RepliesAndRetries) {
  auto four = MockChatModel::constant("4");
  EXPECT_EQ(judge_match(*four, "desc", "Batman"), 4);
  auto later = MockChatModel::queue({"hmm", "Score: 5."});
  EXPECT_EQ(judge_match(*later, "desc", "Batman"), 5);
  auto never = MockChatModel::constant("seven");
  try {
    judge_match(*never, "desc", "Batman", 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnparseableJudgement);
  }
  EXPECT_EQ(never->calls(), 4u);
}

// Keeps the last transcript it was sent.
class Capture : public ChatModel {
 public:
  explicit Capture(std::string reply) : reply_(std::move(reply)) {}
  std::string label() const override { return "capture"; }
  std::string complete(const Messages& m, const CompletionParams&) override {
    last = m;
    return reply_;
  }
  Messages last;

 private:
  std::string reply_;
};

TEST(JudgeMatch, PromptCarriesFullDescriptionAndWord) {
  Capture judge("2");
  std::string long_desc(400, 'd');
  EXPECT_EQ(judge_match(judge, long_desc, "UNIQUE-WORD"), 2);
  ASSERT_FALSE(judge.last.empty());
  const std::string& prompt = judge.last.back().content;
  EXPECT_NE(prompt.find(long_desc), std::string::npos);
  EXPECT_NE(prompt.find("UNIQUE-WORD"), std::string::npos);
  EXPECT_TRUE(parse_judgement(heuristic_reply(judge.last)).has_value());
}

TEST(Aggregate, HandComputedMeans) {
  std::vector<Judgement> js{
      {0, DeepMode::kAggressive, true, "a", 5},  {1, DeepMode::kAggressive, true, "b", 4},
      {0, DeepMode::kAggressive, false, "x", 1}, {1, DeepMode::kAggressive, false, "y", 2},
      {0, DeepMode::kConservative, true, "a", 3}, {0, DeepMode::kConservative, false, "x", 4},
      {0, DeepMode::kConservative, false, "z", 5}};
  DeepReport r = aggregate("m", js);
  EXPECT_DOUBLE_EQ(r.aggressive.target_mean, 4.5);
  EXPECT_DOUBLE_EQ(r.aggressive.distractor_mean, 1.5);
  EXPECT_DOUBLE_EQ(r.conservative.target_mean, 3.0);
  EXPECT_DOUBLE_EQ(r.conservative.distractor_mean, 4.5);
  EXPECT_EQ(r.aggressive.target_count, 2);
  EXPECT_EQ(r.conservative.distractor_count, 2);

  std::mt19937 g(1);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(js.begin(), js.end(), g);
    DeepReport s = aggregate("m", js);
    EXPECT_DOUBLE_EQ(s.aggressive.target_mean, r.aggressive.target_mean);
    EXPECT_DOUBLE_EQ(s.conservative.distractor_mean, r.conservative.distractor_mean);
  }
}

TEST(ScoreModel, ConstantJudgeGivesThreeEverywhere) {
  auto describer = MockChatModel::heuristic();
  auto judge = MockChatModel::constant("3");
  auto items = deep_items_from_pairs({testing::kBertGpt, {"apple", "pear", "en", "food"}});
  DeepOptions options;
  options.parallelism = 2;
  DeepReport r = score_model(*describer, *judge, items, options);
  for (DeepMode m : {DeepMode::kAggressive, DeepMode::kConservative}) {
    EXPECT_DOUBLE_EQ(r.cell(m).target_mean, 3.0);
    EXPECT_DOUBLE_EQ(r.cell(m).distractor_mean, 3.0);
  }
  EXPECT_EQ(r.descriptions.size(), 8u);
  EXPECT_EQ(r.judgements.size(), 16u);
  EXPECT_NE(format_deep_table({r}).find("| 3.00 | 3.00 | 3.00 | 3.00 |"), std::string::npos);
}

TEST(ScoreModel, EmptyItemsRejected) {
  auto m = MockChatModel::heuristic();
  EXPECT_THROW(score_model(*m, *m, {}), Error);
}

TEST(FormatDeepTable, ReferenceRowShape) {
  DeepReport r;
  r.model = "GPT-4 (reference)";
  r.aggressive = {5.0, 1.22, 1, 1};
  r.conservative = {4.38, 3.06, 1, 1};
  std::string t = format_deep_table({r});
  EXPECT_NE(t.find("| GPT-4 (reference) | 5.00 | 1.22 | 4.38 | 3.06 |"), std::string::npos);
  EXPECT_EQ(t.rfind("| Model | Aggressive Target", 0), 0u);
}

TEST(DeepItems, ParseAndValidate) {
  auto items = parse_deep_items("# c\nBatman\tSuperman,Spider-Man\ten\tcomics\napple\tpear\n");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].distractors, (std::vector<std::string>{"Superman", "Spider-Man"}));
  EXPECT_EQ(items[0].domain, "comics");
  EXPECT_EQ(items[1].language, "en");
  try {
    parse_deep_items("ok\tfine\nlonely\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_deep_items("Cat\tcat\n"), Error);
}

TEST(DeepItems, FromPairsBothDirections) {
  auto items = deep_items_from_pairs({testing::kBertGpt});
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].target, "BERT");
  EXPECT_EQ(items[0].distractors, std::vector<std::string>{"GPT"});
  EXPECT_EQ(items[1].target, "GPT");
}

TEST(DeepReport, JsonCarriesCells) {
  auto m = MockChatModel::heuristic();
  auto j = MockChatModel::constant("4");
  DeepReport r = score_model(*m, *j, deep_items_from_pairs({testing::kBertGpt}));
  auto j2 = to_json(r);
  EXPECT_DOUBLE_EQ(j2["aggressive"]["target_mean"].get<double>(), 4.0);
  EXPECT_EQ(j2["descriptions"].size(), 4u);
}

}  // namespace
}  // namespace spygame
