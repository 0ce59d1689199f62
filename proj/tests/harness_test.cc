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

#include <cstdlib>
#include <set>

#include "fixtures.h"
#include "golden_cases.h"
#include "spygame/error.h"
#include "spygame/experiment.h"
#include "spygame/keywords.h"
#include "spygame/log_io.h"
#include "spygame/metrics.h"
#include "support.h"

namespace spygame {
namespace {

using testing::kBertGpt;
using testing::LogBuilder;
using testing::TempDir;

// --- keyword files ---

TEST(KeywordPairs, ParsesFieldsAndComments) {
  auto pairs = parse_keyword_pairs("# comment\n\nBERT\tGPT\ten\tAI\napple\tpear\n");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0], kBertGpt);
  EXPECT_EQ(pairs[1].language, "en");
  EXPECT_EQ(pairs[1].domain, "");
}

TEST(KeywordPairs, OneFieldIsParseErrorWithLine) {
  try {
    parse_keyword_pairs("BERT\tGPT\nlonely\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(KeywordPairs, InvalidAndDuplicatePairs) {
  try {
    parse_keyword_pairs("a\tb\nCat\tcat\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPair);
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse_keyword_pairs("BERT\tGPT\nx\ty\ngpt\tbert\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicatePair);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(KeywordPairs, FiftyLinesGiveHundredKeywords) {
  std::string text;
  for (int i = 0; i < 50; ++i) {
    text += "alpha" + std::to_string(i) + "\tbeta" + std::to_string(i) + "\ten\tdomain\n";
  }
  TempDir dir("kw");
  testing::write_file(dir.path() / "pairs.tsv", text);
  auto pairs = load_keyword_pairs((dir.path() / "pairs.tsv").string());
  ASSERT_EQ(pairs.size(), 50u);
  std::set<std::string> words;
  for (auto& p : pairs) {
    words.insert(p.word_a);
    words.insert(p.word_b);
  }
  EXPECT_EQ(words.size(), 100u);
  EXPECT_THROW(load_keyword_pairs((dir.path() / "missing.tsv").string()), Error);
}

TEST(KeywordPairs, ShippedDataFileLoads) {
  auto pairs = load_keyword_pairs(std::string(SPYGAME_TEST_DATA) + "/../data/keywords.tsv");
  EXPECT_GE(pairs.size(), 5u);
}

// --- metrics ---

GameLog out_round_one() { return testing::metrics_out_round_one(); }
GameLog out_round_two() { return testing::metrics_out_round_two(); }
GameLog spy_win() { return testing::metrics_spy_win(); }

TEST(Metrics, SingleGameExamples) {
  auto r1 = compute_metrics(std::vector<GameLog>{out_round_one()});
  EXPECT_DOUBLE_EQ(r1.win, 0);
  EXPECT_DOUBLE_EQ(r1.round, 1);
  EXPECT_DOUBLE_EQ(r1.voted, 3.0);
  auto r3 = compute_metrics(std::vector<GameLog>{spy_win()});
  EXPECT_DOUBLE_EQ(r3.win, 1);
  EXPECT_DOUBLE_EQ(r3.round, 3);
  EXPECT_DOUBLE_EQ(r3.voted, 0.5);
}

TEST(Metrics, ThreeGameFixture) {
  std::vector<GameLog> logs{out_round_one(), out_round_two(), spy_win()};
  auto r = compute_metrics(logs);
  EXPECT_EQ(r.games, 3);
  EXPECT_DOUBLE_EQ(r.win, testing::kFixtureWin);
  EXPECT_DOUBLE_EQ(r.round, testing::kFixtureRound);
  EXPECT_DOUBLE_EQ(r.voted, testing::kFixtureVoted);
  EXPECT_DOUBLE_EQ(r.voted, 5.0 / 3);
}

TEST(Metrics, ConcatenationIsWeightedCombination) {
  std::vector<GameLog> a{out_round_one(), spy_win()};
  std::vector<GameLog> b{out_round_two(), spy_win(), spy_win()};
  std::vector<GameLog> all = a;
  all.insert(all.end(), b.begin(), b.end());
  auto ma = compute_metrics(a);
  auto mb = compute_metrics(b);
  auto m = compute_metrics(all);
  auto combine = [&](double x, double y) { return (x * 2 + y * 3) / 5; };
  EXPECT_NEAR(m.win, combine(ma.win, mb.win), 1e-12);
  EXPECT_NEAR(m.round, combine(ma.round, mb.round), 1e-12);
  EXPECT_NEAR(m.voted, combine(ma.voted, mb.voted), 1e-12);
}

TEST(Metrics, IncompleteAndEmpty) {
  GameLog partial = LogBuilder("m/p").vote(1, 1, 2).build();
  std::vector<GameLog> logs{out_round_one(), partial};
  try {
    compute_metrics(logs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteLog);
  }
  auto s = summarize(logs);
  EXPECT_EQ(s.games, 1);
  EXPECT_EQ(s.incomplete, 1);
  EXPECT_THROW(compute_metrics(std::vector<GameLog>{}), Error);
}

TEST(Metrics, SurviveRoundTrip) {
  std::vector<GameLog> logs{out_round_one(), out_round_two(), spy_win()};
  std::vector<GameLog> back;
  for (auto& l : logs) back.push_back(parse_log(serialize_log(l)));
  auto a = compute_metrics(logs);
  auto b = compute_metrics(back);
  EXPECT_EQ(a.win, b.win);
  EXPECT_EQ(a.round, b.round);
  EXPECT_EQ(a.voted, b.voted);
}

TEST(Metrics, TableShape) {
  std::vector<GameLog> logs{out_round_one(), out_round_two(), spy_win()};
  std::string t = format_metrics_table({{"fixture", compute_metrics(logs)}});
  EXPECT_NE(t.find("| fixture | 3 | 0.33 | 2.00 | 1.67 |"), std::string::npos) << t;
  EXPECT_EQ(direction_of(logs[0]), "b");
}

// --- log persistence ---

TEST(LogIo, RoundTripEveryGolden) {
  for (const auto& c : testing::golden_cases()) {
    GameLog log = testing::run_case(c);
    std::string text = serialize_log(log);
    EXPECT_EQ(parse_log(text), log) << c.name;
    EXPECT_EQ(serialize_log(parse_log(text)), text) << c.name;
  }
}

TEST(LogIo, MatchesGoldenFiles) {
  const bool update = std::getenv("SPYGAME_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : testing::golden_cases()) {
    auto path = testing::golden_dir() / (c.name + ".log");
    std::string text = serialize_log(testing::run_case(c));
    if (update) {
      testing::write_file(path, text);
      continue;
    }
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(testing::read_file(path), text) << c.name;
    EXPECT_EQ(read_log(path), parse_log(text));
  }
}

TEST(LogIo, TruncationIsCorruptRecordWithLine) {
  std::string text = serialize_log(testing::run_case(testing::golden_cases()[0]));
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  // Final newline missing.
  try {
    parse_log(text.substr(0, text.size() - 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptRecord);
    EXPECT_EQ(e.line(), lines);
  }
  // Cut mid-record.
  std::size_t cut = text.find('\n', text.size() / 2) + 10;
  int line = 1;
  for (std::size_t i = 0; i < cut; ++i) line += text[i] == '\n';
  try {
    parse_log(text.substr(0, cut));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptRecord);
    EXPECT_EQ(e.line(), line);
  }
}

TEST(LogIo, StructuralChecks) {
  std::string text = serialize_log(testing::run_case(testing::golden_cases()[0]));
  try {
    parse_log("{\"format\":\"other\",\"version\":1}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
  }
  try {
    parse_log("{\"format\":\"spygame-log\",\"version\":2}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
  }
  // Drop the third line (seq 1) to create a gap.
  std::size_t a = text.find('\n');
  std::size_t b = text.find('\n', a + 1);
  std::size_t c = text.find('\n', b + 1);
  std::string gap = text.substr(0, b + 1) + text.substr(c + 1);
  try {
    parse_log(gap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptRecord);
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(LogIo, WriteReadFindLogs) {
  TempDir dir("logs");
  auto cases = testing::golden_cases();
  write_log(testing::run_case(cases[1]), dir.path() / "b" / "x.log");
  write_log(testing::run_case(cases[0]), dir.path() / "a" / "y.log");
  testing::write_file(dir.path() / "a" / "notes.txt", "ignored");
  auto found = find_logs(dir.path());
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0].filename(), "y.log");
  EXPECT_EQ(read_logs(dir.path()).size(), 2u);
  testing::write_file(dir.path() / "bad.log", "{\"format\":\"spygame-log\",\"version\":1}\n{");
  try {
    read_log(dir.path() / "bad.log");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptRecord);
    EXPECT_NE(std::string(e.what()).find("bad.log"), std::string::npos);
  }
}

// --- experiments ---

ExperimentConfig small_experiment(const std::filesystem::path& out) {
  ExperimentConfig c;
  c.name = "exp";
  c.pairs = {kBertGpt, {"apple", "pear", "en", "food"}};
  c.n_games = 3;
  c.game.seed = 99;
  c.guest = "scripted:dots+uniform";
  c.hosts = {"scripted:generic+uniform"};
  c.out_dir = out;
  return c;
}

TEST(Experiment, ValidationErrors) {
  ExperimentConfig c = small_experiment({});
  c.n_games = 0;
  EXPECT_THROW(c.validate(), Error);
  c = small_experiment({});
  c.hosts = {"scripted:uniform", "scripted:uniform"};
  EXPECT_THROW(c.validate(), Error);
  c = small_experiment({});
  c.guest = "telepathy:x";
  EXPECT_THROW(c.validate(), Error);
  c = small_experiment({});
  c.guest = "remote:nobody";
  EXPECT_THROW(c.validate(), Error);
}

TEST(Experiment, SeedStreamIsPureAndDistinct) {
  std::set<std::uint64_t> seeds;
  for (std::size_t p = 0; p < 5; ++p) {
    for (int d = 0; d < 2; ++d) {
      for (int k = 0; k < 10; ++k) {
        EXPECT_EQ(game_seed(1, p, d, k), game_seed(1, p, d, k));
        seeds.insert(game_seed(1, p, d, k));
      }
    }
  }
  EXPECT_EQ(seeds.size(), 100u);
  EXPECT_NE(game_seed(1, 0, 0, 0), game_seed(2, 0, 0, 0));
}

TEST(Experiment, LogLayoutAndDirections) {
  EXPECT_EQ(log_relative_path("exp", 7, 50, 'a', 2), std::filesystem::path("exp/007/a/2.log"));
  EXPECT_EQ(log_relative_path("exp", 7, 5000, 'b', 0), std::filesystem::path("exp/0007/b/0.log"));
  TempDir dir("exp");
  auto r = run_experiment(small_experiment(dir.path()));
  ASSERT_EQ(r.logs.size(), 6u);
  ASSERT_EQ(r.files.size(), 6u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "exp/000/a/0.log"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "exp/000/b/1.log"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "exp/001/a/2.log"));
  EXPECT_EQ(r.by_direction.at("a").games, 4);
  EXPECT_EQ(r.by_direction.at("b").games, 2);
  for (const auto& log : r.logs) {
    const auto* a = log.assignments();
    const auto* c = log.config();
    const auto& spy_word = a->at(player(c->config.guest_index)).keyword;
    EXPECT_EQ(spy_word, direction_of(log) == "a" ? c->pair.word_a : c->pair.word_b);
  }
  EXPECT_EQ(r.metrics.games, 6);
}

TEST(Experiment, RerunReproducesIdenticalLogs) {
  TempDir one("rerun1");
  TempDir two("rerun2");
  auto a = small_experiment(one.path());
  auto b = small_experiment(two.path());
  b.parallelism = 3;
  auto ra = run_experiment(a);
  auto rb = run_experiment(b);
  ASSERT_EQ(ra.files.size(), rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    EXPECT_EQ(testing::read_file(ra.files[i]), testing::read_file(rb.files[i]));
  }
}

TEST(Experiment, PerSeatHostsAndConfigFile) {
  TempDir dir("cfg");
  testing::write_file(dir.path() / "pairs.tsv", "BERT\tGPT\ten\tAI\n");
  testing::write_file(dir.path() / "exp.json", R"({
    "name": "from-file", "keywords": "pairs.tsv", "games": 2, "seed": 5,
    "guest": "scripted:dots", "hosts": ["scripted:first", "scripted:uniform", "scripted:first"],
    "reasoning": false, "tom_probes": true,
    "backends": {"gpt": {"provider": "openai", "model": "gpt-4",
                         "endpoint": "https://api.openai.com/v1/chat/completions"}}
  })");
  ExperimentConfig c = load_experiment_config(dir.path() / "exp.json");
  EXPECT_EQ(c.name, "from-file");
  EXPECT_EQ(c.hosts.size(), 3u);
  EXPECT_FALSE(c.game.enable_reasoning);
  EXPECT_EQ(c.remotes.at("gpt").model, "gpt-4");
  auto r = run_experiment(c);
  ASSERT_EQ(r.logs.size(), 2u);
  const auto* cfg = r.logs[0].config();
  EXPECT_EQ(cfg->backends[0], "scripted:dots");
  EXPECT_EQ(cfg->backends[1], "scripted:first");
  EXPECT_EQ(cfg->backends[2], "scripted:uniform");

  testing::write_file(dir.path() / "broken.json", "{ not json");
  EXPECT_THROW(load_experiment_config(dir.path() / "broken.json"), Error);
}

TEST(Experiment, AblationsOnlyRemoveGuessAndReasoning) {
  ExperimentConfig full = small_experiment({});
  full.guest = "scripted:generic+uniform";
  ExperimentConfig bare = full;
  bare.game.enable_word_guessing = false;
  bare.game.enable_reasoning = false;
  auto a = run_experiment(full);
  auto b = run_experiment(bare);
  for (std::size_t i = 0; i < a.logs.size(); ++i) {
    std::vector<EventType> ta, tb;
    for (auto& e : a.logs[i].events) {
      if (e.type() != EventType::kGuess && e.type() != EventType::kReasoning) ta.push_back(e.type());
    }
    for (auto& e : b.logs[i].events) tb.push_back(e.type());
    EXPECT_EQ(ta, tb);
  }
}

}  // namespace
}  // namespace spygame
