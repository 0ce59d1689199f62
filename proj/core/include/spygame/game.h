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

#ifndef SPYGAME_GAME_H_
#define SPYGAME_GAME_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spygame/agent.h"
#include "spygame/events.h"
#include "spygame/rng.h"
#include "spygame/types.h"

namespace spygame {

// Guest seat is always a spy. The spy word is drawn from the pair per
// `config.spy_word`; remaining spies (n_spies > 1) are drawn uniformly from
// the other seats. Throws Error(kInvalidPair) / Error(kInvalidConfig).
Assignments assign_roles_and_keywords(const GameConfig& config,
                                      const KeywordPair& pair, Rng& rng);

// A uniformly random permutation of `survivors`.
std::vector<PlayerId> speaking_order(std::span<const PlayerId> survivors, Rng& rng);

// KeywordLeak: the keyword appears as a whole token (alphabetic scripts) or
// any keyword character appears (CJK). Duplicate: the normalized text equals
// a normalized prior description. Descriptions without any word content, such
// as "...", never count as duplicates.
std::optional<Violation> validate_description(
    std::string_view text, std::string_view keyword,
    std::span<const std::string> prior_descriptions, std::string_view language);

// survivors minus the voter, shuffled.
std::vector<PlayerId> vote_options(std::span<const PlayerId> survivors,
                                   PlayerId voter, Rng& rng);

struct Ballot {
  PlayerId voter;
  PlayerId choice;
};

// Requires exactly one ballot per survivor (Error(kMissingVote) otherwise).
// Ties are broken uniformly with `rng`; rng is untouched without a tie.
EliminationRecord tally_votes(std::span<const Ballot> ballots,
                              std::span<const PlayerId> survivors, Rng& rng);

struct GameState {
  std::string game_id;
  GameConfig config;
  KeywordPair pair;
  std::vector<std::string> roster;
  Assignments assignments;
  std::vector<PlayerId> survivors;  // seat order
  int round = 1;
  std::vector<Event> history;  // append-only
  Rng rng{0};

  const std::string& name_of(PlayerId p) const;
  bool alive(PlayerId p) const;
  PlayerId guest() const { return player(config.guest_index); }
  const Event& append(int round, std::optional<PlayerId> actor,
                      EventPayload payload);
};

// Villagers win once no spy survives; spies win once they are not
// outnumbered (for one spy: two players left).
std::optional<OutcomeRecord> check_victory(const GameState& state);

// Called with every context the engine builds, before it reaches a backend.
using ContextInspector = std::function<void(const AgentContext&, Action)>;

struct RunOptions {
  std::string game_id;
  // First- and second-order probes after the round-1 speeches.
  bool tom_probes = false;
  ContextInspector inspector;
};

struct GameSetup {
  const GameConfig& config;
  const KeywordPair& pair;
  const std::vector<std::string>& roster;
  // Ground truth, for scripted oracle policies only.
  const Assignments& assignments;
};

using AgentProvider = std::function<AgentSet(const GameSetup&)>;

// Seeded game driver. Holds the state and advances it round by round.
class Game {
 public:
  // Validates and assigns roles; no events are written until start().
  Game(GameConfig config, KeywordPair pair, RunOptions options = {});

  const GameState& state() const { return state_; }
  GameSetup setup() const;

  // Appends Config and Assignment and notifies backends.
  void start(AgentSet& agents);
  // One speaking phase and one voting phase ending in an elimination, then an
  // Outcome record if the game is decided.
  void run_round(AgentSet& agents);
  bool finished() const;
  void abort(AgentSet& agents, const std::string& reason);

  AgentContext context_for(PlayerId p) const;
  GameLog log() const;

 private:
  void publish(AgentSet& agents, const Event& event);
  void run_probes(AgentSet& agents, const std::vector<PlayerId>& order);
  AgentBackend& agent(AgentSet& agents, PlayerId p);
  AgentContext inspected_context(PlayerId p, Action action) const;

  GameState state_;
  RunOptions options_;
};

// Runs to an Outcome, or to an Aborted record when a backend fails.
GameLog run_game(const GameConfig& config, const KeywordPair& pair,
                 AgentSet& agents, const RunOptions& options = {});
GameLog run_game(const GameConfig& config, const KeywordPair& pair,
                 const AgentProvider& provider, const RunOptions& options = {});

}  // namespace spygame

#endif  // SPYGAME_GAME_H_
