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

#ifndef SPYGAME_TESTS_FIXTURES_H_
#define SPYGAME_TESTS_FIXTURES_H_

// Hand-built logs with hand-computed scores, shared by the unit tests and
// the acceptance binary.

#include <vector>

#include "support.h"

namespace spygame::testing {

// --- metrics; the spy is seat 1 ---

// Out in round 1 with 3 votes.
inline GameLog metrics_out_round_one() {
  return LogBuilder("m/1")
      .vote(1, 1, 2).vote(1, 2, 1).vote(1, 3, 1).vote(1, 4, 1)
      .eliminate(1, 1)
      .outcome(1, Team::kVillager, 1)
      .build();
}

// Round 1: 1 vote on the spy, seat 2 out. Round 2: 2 votes, spy out.
inline GameLog metrics_out_round_two() {
  return LogBuilder("m/2")
      .vote(1, 1, 2).vote(1, 2, 1).vote(1, 3, 2).vote(1, 4, 2)
      .eliminate(1, 2)
      .vote(2, 1, 3).vote(2, 3, 1).vote(2, 4, 1)
      .eliminate(2, 1)
      .outcome(2, Team::kVillager, 2)
      .build();
}

// Spy win after two eliminations; votes on the spy 1 then 0.
inline GameLog metrics_spy_win() {
  return LogBuilder("m/3")
      .vote(1, 1, 2).vote(1, 2, 1).vote(1, 3, 2).vote(1, 4, 2)
      .eliminate(1, 2)
      .vote(2, 1, 3).vote(2, 3, 4).vote(2, 4, 3)
      .eliminate(2, 3)
      .outcome(2, Team::kSpy, 2)
      .build();
}

// Win 1/3; Round (1 + 2 + 3) / 3; Voted (3 + (1 + 2) / 2 + (1 + 0) / 2) / 3.
inline constexpr double kFixtureWin = 1.0 / 3;
inline constexpr double kFixtureRound = 2.0;
inline constexpr double kFixtureVoted = (3.0 + 1.5 + 0.5) / 3;

inline std::vector<GameLog> metrics_fixture() {
  return {metrics_out_round_one(), metrics_out_round_two(), metrics_spy_win()};
}

// --- ToM; the guest is seat 1 and holds GPT, the hosts hold BERT ---

inline GameLog tom_game_one() {
  return LogBuilder("tom/1")
      .speech(1, 1, "a").speech(1, 2, "b").speech(1, 3, "c").speech(1, 4, "d")
      .probe_first(1, 1, inference({{"GPT", true}, {"BERT", false}, {"BERT", false}, {"GPT", false}}))
      .probe_first(1, 2, inference({{"BERT", false}, {"BERT", false}, {"GPT", true}, {"BERT", false}}))
      .probe_first(1, 3, inference({{"GPT", true}, {"BERT", false}, {"BERT", false}, {"BERT", false}}))
      .probe_first(1, 4, inference({{"bert", true}, {"BERT", false}, {"BERT", false}, {"BERT", false}}))
      .probe_second(1, 1, SecondOrderInference{"BERT", Role::kVillager})
      .vote(1, 1, 2).vote(1, 2, 1).vote(1, 3, 1).vote(1, 4, 1)
      .eliminate(1, 1)
      .outcome(1, Team::kVillager, 1)
      .build();
}

inline GameLog tom_game_two() {
  return LogBuilder("tom/2")
      .speech(1, 1, "a").speech(1, 2, "b").speech(1, 3, "c").speech(1, 4, "d")
      .probe_first(1, 1, inference({{"BERT", false}, {"BERT", true}, {"BERT", false}, {"BERT", false}}))
      .probe_first(1, 2, inference({{"GPT", true}, {"BERT", false}, {"BERT", false}, {"BERT", false}}))
      .probe_first(1, 3, inference({{"gpt", true}, {"BERT", false}, {"BERT", false}, {"BERT", false}}))
      .probe_first(1, 4, std::nullopt)
      .probe_second(1, 1, SecondOrderInference{"GPT", Role::kSpy})
      .vote(1, 1, 2).vote(1, 2, 1).vote(1, 3, 1).vote(1, 4, 1)
      .eliminate(1, 1)
      .outcome(1, Team::kVillager, 1)
      .build();
}

// Game 1: self spy; others' words 2/3, identities 3/3; hosts about guest:
//   (BERT,villager) (GPT,spy) (bert,spy) vs prediction (BERT,villager)
//   -> words 2/3, identity 1/3.
// Game 2: self villager; words 3/3, identities 2/3; hosts: (GPT,spy) (gpt,spy)
//   invalid vs prediction (GPT,spy) -> words 2/3, identity 2/3.
struct TomExpected {
  double self_identity, word1, identity1, word2, identity2;
};
inline constexpr TomExpected kTomPerHost{0.5, (2.0 / 3 + 1.0) / 2, (1.0 + 2.0 / 3) / 2,
                                         (2.0 / 3 + 2.0 / 3) / 2, (1.0 / 3 + 2.0 / 3) / 2};

// Drops probe records and renumbers seq.
inline GameLog without_probes(GameLog log) {
  std::vector<Event> kept;
  for (auto& e : log.events) {
    if (e.type() == EventType::kProbe) continue;
    e.seq = static_cast<int>(kept.size());
    kept.push_back(std::move(e));
  }
  log.events = std::move(kept);
  return log;
}

}  // namespace spygame::testing

#endif  // SPYGAME_TESTS_FIXTURES_H_
