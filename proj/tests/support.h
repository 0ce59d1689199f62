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

#ifndef SPYGAME_TESTS_SUPPORT_H_
#define SPYGAME_TESTS_SUPPORT_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spygame/experiment.h"
#include "spygame/game.h"
#include "spygame/scripted.h"

namespace spygame::testing {

inline const KeywordPair kBertGpt{"BERT", "GPT", "en", "AI"};

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("spygame-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// One scripted spec per seat, or one spec for all seats.
inline AgentProvider scripted(std::vector<std::string> specs) {
  return [specs](const GameSetup& setup) {
    BackendFactory factory;
    AgentSet agents;
    for (int seat = 1; seat <= setup.config.n_players; ++seat) {
      const auto& s = specs.size() == 1 ? specs[0] : specs.at(static_cast<std::size_t>(seat - 1));
      agents.push_back(factory.make("scripted:" + s, setup, player(seat)));
    }
    return agents;
  };
}

// Hand-built logs for scorer fixtures. Events get consecutive seq numbers.
class LogBuilder {
 public:
  LogBuilder(std::string game_id, int n_players = 4, int guest = 1,
             SpyWord spy_word = SpyWord::kWordB) {
    log_.game_id = std::move(game_id);
    ConfigRecord c;
    c.config.n_players = n_players;
    c.config.guest_index = guest;
    c.config.spy_word = spy_word;
    c.pair = kBertGpt;
    c.roster = naming_roster(1, n_players);
    c.backends.assign(static_cast<std::size_t>(n_players), "fixture");
    const std::string spy_kw = spy_word == SpyWord::kWordA ? "BERT" : "GPT";
    const std::string villager_kw = spy_word == SpyWord::kWordA ? "GPT" : "BERT";
    Assignments a;
    for (int i = 1; i <= n_players; ++i) {
      a[player(i)] = i == guest ? Assignment{Role::kSpy, spy_kw}
                                : Assignment{Role::kVillager, villager_kw};
    }
    add(0, std::nullopt, std::move(c));
    add(0, std::nullopt, AssignmentRecord{std::move(a)});
  }

  LogBuilder& speech(int round, int seat, std::string text) {
    SpeechRecord s;
    s.text = std::move(text);
    return add(round, player(seat), std::move(s));
  }

  LogBuilder& vote(int round, int voter, int choice) {
    VoteRecord v;
    v.choice = player(choice);
    v.options = {player(choice)};
    round_votes_[round].push_back(player(choice));
    return add(round, player(voter), std::move(v));
  }

  // Eliminates the most voted seat of `round` (ties are not modelled here).
  LogBuilder& eliminate(int round, int seat) {
    EliminationRecord e;
    e.player = player(seat);
    for (PlayerId p : round_votes_[round]) ++e.tally[p];
    return add(round, std::nullopt, std::move(e));
  }

  LogBuilder& outcome(int round, Team winner, int rounds_played) {
    return add(round, std::nullopt, OutcomeRecord{winner, rounds_played});
  }

  LogBuilder& probe_first(int round, int seat, std::optional<FirstOrderInference> inf) {
    ProbeRecord p;
    p.order = ProbeOrder::kFirst;
    p.first = std::move(inf);
    return add(round, player(seat), std::move(p));
  }

  LogBuilder& probe_second(int round, int seat, std::optional<SecondOrderInference> inf) {
    ProbeRecord p;
    p.order = ProbeOrder::kSecond;
    p.second = std::move(inf);
    return add(round, player(seat), std::move(p));
  }

  GameLog build() const { return log_; }

 private:
  LogBuilder& add(int round, std::optional<PlayerId> actor, EventPayload payload) {
    Event e;
    e.seq = static_cast<int>(log_.events.size());
    e.round = round;
    e.actor = actor;
    e.payload = std::move(payload);
    log_.events.push_back(std::move(e));
    return *this;
  }

  GameLog log_;
  std::map<int, std::vector<PlayerId>> round_votes_;
};

// Entries for seats 1..n: (keyword, spy?) per seat.
inline FirstOrderInference inference(
    const std::vector<std::pair<std::string, bool>>& per_seat) {
  FirstOrderInference out;
  for (std::size_t i = 0; i < per_seat.size(); ++i) {
    out.entries.push_back({player(static_cast<int>(i + 1)), per_seat[i].first,
                           per_seat[i].second ? Role::kSpy : Role::kVillager});
  }
  return out;
}

}  // namespace spygame::testing

#endif  // SPYGAME_TESTS_SUPPORT_H_
