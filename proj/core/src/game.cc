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

#include "spygame/game.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "spygame/error.h"
#include "spygame/text.h"

namespace spygame {
namespace {

bool is_ascii_word(std::string_view cp) {
  return cp.size() == 1 && std::isalnum(static_cast<unsigned char>(cp[0]));
}

bool leaks_keyword(std::string_view description, std::string_view keyword,
                   std::string_view language) {
  const auto desc_tokens = text::tokens(description);
  auto has_token = [&](const std::string& t) {
    return std::find(desc_tokens.begin(), desc_tokens.end(), t) !=
           desc_tokens.end();
  };
  if (text::is_cjk_language(language)) {
    // Every non-ASCII keyword character is forbidden on its own; embedded
    // Latin runs (e.g. "GPT") are matched as whole tokens.
    const auto desc_cps = text::code_points(description);
    std::string latin_run;
    auto flush = [&]() {
      bool leak = !latin_run.empty() && has_token(text::to_lower_ascii(latin_run));
      latin_run.clear();
      return leak;
    };
    for (const auto& cp : text::code_points(keyword)) {
      if (is_ascii_word(cp)) {
        latin_run += cp;
        continue;
      }
      if (flush()) return true;
      if (cp.size() > 1 &&
          std::find(desc_cps.begin(), desc_cps.end(), cp) != desc_cps.end()) {
        return true;
      }
    }
    return flush();
  }
  // Any content word of a multi-word keyword counts as part of it.
  static const std::set<std::string> kStopwords = {"a",  "an", "and", "the", "of",
                                                   "in", "on", "to",  "for"};
  const auto kw_tokens = text::tokens(keyword);
  for (const auto& t : kw_tokens) {
    if (kw_tokens.size() > 1 && kStopwords.count(t)) continue;
    if (has_token(t)) return true;
  }
  return false;
}

std::vector<PlayerId> without(std::span<const PlayerId> players, PlayerId p) {
  std::vector<PlayerId> out;
  for (PlayerId q : players) {
    if (q != p) out.push_back(q);
  }
  return out;
}

std::string note_for(const Event& e) {
  std::string prefix = "Round " + std::to_string(e.round) + ", ";
  if (auto* g = e.as<GuessRecord>()) {
    return prefix + "your guess of the other keyword: " +
           (g->guess.empty() ? "(none)" : g->guess);
  }
  if (auto* r = e.as<ReasoningRecord>()) {
    return prefix + "your reasoning: " + r->raw;
  }
  return {};
}

std::optional<HistoryEntry> to_history(const Event& e) {
  HistoryEntry h;
  h.round = e.round;
  if (auto* s = e.as<SpeechRecord>()) {
    h.kind = HistoryEntry::Kind::kSpeech;
    h.actor = *e.actor;
    h.text = s->text;
  } else if (auto* v = e.as<VoteRecord>()) {
    h.kind = HistoryEntry::Kind::kVote;
    h.actor = *e.actor;
    h.target = v->choice;
  } else if (auto* x = e.as<EliminationRecord>()) {
    h.kind = HistoryEntry::Kind::kElimination;
    h.actor = x->player;
    h.tally = x->tally;
  } else {
    return std::nullopt;
  }
  return h;
}

}  // namespace

Assignments assign_roles_and_keywords(const GameConfig& config,
                                      const KeywordPair& pair, Rng& rng) {
  config.validate();
  pair.validate();
  bool spy_gets_a = true;
  switch (config.spy_word) {
    case SpyWord::kRandom: spy_gets_a = rng.below(2) == 0; break;
    case SpyWord::kWordA: spy_gets_a = true; break;
    case SpyWord::kWordB: spy_gets_a = false; break;
  }
  const std::string& spy_word = spy_gets_a ? pair.word_a : pair.word_b;
  const std::string& villager_word = spy_gets_a ? pair.word_b : pair.word_a;

  std::set<int> spies = {config.guest_index};
  if (config.n_spies > 1) {
    std::vector<int> others;
    for (int i = 1; i <= config.n_players; ++i) {
      if (i != config.guest_index) others.push_back(i);
    }
    rng.shuffle(std::span<int>(others));
    for (int k = 0; k < config.n_spies - 1; ++k) spies.insert(others[k]);
  }

  Assignments out;
  for (int i = 1; i <= config.n_players; ++i) {
    bool spy = spies.count(i) > 0;
    out[player(i)] = Assignment{spy ? Role::kSpy : Role::kVillager,
                                spy ? spy_word : villager_word};
  }
  return out;
}

std::vector<PlayerId> speaking_order(std::span<const PlayerId> survivors, Rng& rng) {
  std::vector<PlayerId> order(survivors.begin(), survivors.end());
  rng.shuffle(std::span<PlayerId>(order));
  return order;
}

std::optional<Violation> validate_description(
    std::string_view text, std::string_view keyword,
    std::span<const std::string> prior_descriptions, std::string_view language) {
  if (leaks_keyword(text, keyword, language)) return Violation::kKeywordLeak;
  const std::string norm = text::normalize(text);
  if (norm.empty()) return std::nullopt;
  for (const auto& prior : prior_descriptions) {
    if (text::normalize(prior) == norm) return Violation::kDuplicate;
  }
  return std::nullopt;
}

std::vector<PlayerId> vote_options(std::span<const PlayerId> survivors,
                                   PlayerId voter, Rng& rng) {
  auto options = without(survivors, voter);
  rng.shuffle(std::span<PlayerId>(options));
  return options;
}

EliminationRecord tally_votes(std::span<const Ballot> ballots,
                              std::span<const PlayerId> survivors, Rng& rng) {
  std::set<PlayerId> voters;
  for (const Ballot& b : ballots) voters.insert(b.voter);
  const std::set<PlayerId> expected(survivors.begin(), survivors.end());
  if (voters != expected || ballots.size() != survivors.size()) {
    throw Error(ErrorCode::kMissingVote,
                "need exactly one ballot from each of " +
                    std::to_string(survivors.size()) + " survivors, got " +
                    std::to_string(ballots.size()));
  }
  EliminationRecord record;
  for (const Ballot& b : ballots) ++record.tally[b.choice];
  int best = 0;
  for (const auto& [p, n] : record.tally) best = std::max(best, n);
  std::vector<PlayerId> tied;
  for (const auto& [p, n] : record.tally) {
    if (n == best) tied.push_back(p);
  }
  if (tied.size() == 1) {
    record.player = tied.front();
  } else {
    record.player = rng.pick(std::span<const PlayerId>(tied));
    record.tie_broken = true;
  }
  return record;
}

const std::string& GameState::name_of(PlayerId p) const {
  return roster.at(static_cast<std::size_t>(index_of(p) - 1));
}

bool GameState::alive(PlayerId p) const {
  return std::find(survivors.begin(), survivors.end(), p) != survivors.end();
}

const Event& GameState::append(int event_round, std::optional<PlayerId> actor,
                               EventPayload payload) {
  Event e;
  e.seq = static_cast<int>(history.size());
  e.round = event_round;
  e.actor = actor;
  e.payload = std::move(payload);
  history.push_back(std::move(e));
  return history.back();
}

std::optional<OutcomeRecord> check_victory(const GameState& state) {
  int spies = 0;
  int villagers = 0;
  for (PlayerId p : state.survivors) {
    if (state.assignments.at(p).role == Role::kSpy) {
      ++spies;
    } else {
      ++villagers;
    }
  }
  int played = 0;
  for (const auto& e : state.history) {
    if (e.type() == EventType::kElimination) played = e.round;
  }
  if (spies == 0) return OutcomeRecord{Team::kVillager, played};
  if (spies >= villagers) return OutcomeRecord{Team::kSpy, played};
  return std::nullopt;
}

Game::Game(GameConfig config, KeywordPair pair, RunOptions options)
    : options_(std::move(options)) {
  config.validate();
  pair.validate();
  state_.game_id = options_.game_id;
  state_.config = std::move(config);
  state_.pair = std::move(pair);
  state_.rng = Rng(state_.config.seed);
  state_.roster = naming_roster(state_.config.naming_method, state_.config.n_players);
  state_.assignments =
      assign_roles_and_keywords(state_.config, state_.pair, state_.rng);
  for (int i = 1; i <= state_.config.n_players; ++i) {
    state_.survivors.push_back(player(i));
  }
}

GameSetup Game::setup() const {
  return GameSetup{state_.config, state_.pair, state_.roster, state_.assignments};
}

AgentBackend& Game::agent(AgentSet& agents, PlayerId p) {
  return *agents.at(static_cast<std::size_t>(index_of(p) - 1));
}

void Game::start(AgentSet& agents) {
  if (static_cast<int>(agents.size()) != state_.config.n_players) {
    throw Error(ErrorCode::kInvalidConfig,
                "expected " + std::to_string(state_.config.n_players) +
                    " agents, got " + std::to_string(agents.size()));
  }
  ConfigRecord config{state_.config, state_.pair, state_.roster, {}};
  for (const auto& a : agents) config.backends.push_back(a->label());
  state_.append(0, std::nullopt, std::move(config));
  state_.append(0, std::nullopt, AssignmentRecord{state_.assignments});
  for (PlayerId p : state_.survivors) {
    agent(agents, p).on_game_start(context_for(p));
  }
}

AgentContext Game::context_for(PlayerId p) const {
  AgentContext ctx;
  ctx.self = p;
  ctx.self_name = state_.name_of(p);
  ctx.own_keyword = state_.assignments.at(p).keyword;
  ctx.language = state_.pair.language;
  ctx.round = state_.round;
  ctx.roster = state_.roster;
  ctx.survivors = state_.survivors;
  for (const auto& e : state_.history) {
    if (auto h = to_history(e)) {
      ctx.history.push_back(std::move(*h));
    } else if (e.actor == p && (e.type() == EventType::kGuess ||
                                e.type() == EventType::kReasoning)) {
      ctx.own_notes.push_back(note_for(e));
    }
  }
  return ctx;
}

AgentContext Game::inspected_context(PlayerId p, Action action) const {
  AgentContext ctx = context_for(p);
  if (options_.inspector) options_.inspector(ctx, action);
  return ctx;
}

void Game::publish(AgentSet& agents, const Event& event) {
  auto entry = to_history(event);
  if (!entry) return;
  for (auto& a : agents) a->on_public_event(*entry);
}

void Game::run_probes(AgentSet& agents, const std::vector<PlayerId>& order) {
  std::vector<PlayerId> seats = order;
  std::sort(seats.begin(), seats.end());
  const int r = state_.round;
  const int retries = state_.config.max_reprompts;
  for (PlayerId p : seats) {
    AgentBackend& a = agent(agents, p);
    if (!a.handles(Action::kProbeFirst)) continue;
    auto res = act_reason(a, inspected_context(p, Action::kProbeFirst), retries,
                          Action::kProbeFirst);
    ProbeRecord rec;
    rec.order = ProbeOrder::kFirst;
    rec.first = std::move(res.inference);
    rec.attempts = res.attempts;
    rec.raw = std::move(res.raw);
    state_.append(r, p, std::move(rec));
  }
  PlayerId guest = state_.guest();
  AgentBackend& g = agent(agents, guest);
  if (state_.alive(guest) && g.handles(Action::kProbeSecond)) {
    auto res = act_probe_second(g, inspected_context(guest, Action::kProbeSecond),
                                retries);
    ProbeRecord rec;
    rec.order = ProbeOrder::kSecond;
    rec.second = std::move(res.inference);
    rec.attempts = res.attempts;
    rec.raw = std::move(res.raw);
    state_.append(r, guest, std::move(rec));
  }
}

void Game::run_round(AgentSet& agents) {
  if (finished()) return;
  const GameConfig& cfg = state_.config;
  const int r = state_.round;

  for (auto& a : agents) a->on_phase(r, Phase::kSpeaking);
  std::vector<PlayerId> order;
  if (r == 1 && cfg.first_round_order) {
    order = *cfg.first_round_order;
  } else if (cfg.randomize_speaking_order) {
    order = speaking_order(state_.survivors, state_.rng);
  } else {
    order = state_.survivors;
  }

  std::vector<std::string> prior;
  for (const auto& e : state_.history) {
    if (auto* s = e.as<SpeechRecord>()) prior.push_back(s->text);
  }

  for (PlayerId p : order) {
    AgentBackend& a = agent(agents, p);
    if (cfg.enable_word_guessing && a.handles(Action::kGuessWord)) {
      auto guess = act_guess_word(a, inspected_context(p, Action::kGuessWord));
      state_.append(r, p, std::move(guess));
    }

    SpeechRecord speech;
    if (cfg.content_free) {
      speech.text = std::string(kFallbackSpeech);
      speech.attempts = 0;
    } else {
      const std::string& keyword = state_.assignments.at(p).keyword;
      auto check = [&](std::string_view candidate) {
        return validate_description(candidate, keyword, prior, state_.pair.language);
      };
      auto res = act_speak(a, inspected_context(p, Action::kSpeak), check,
                           cfg.max_reprompts);
      speech.text = std::move(res.text);
      speech.violations = std::move(res.violations);
      speech.attempts = res.attempts;
    }
    prior.push_back(speech.text);
    publish(agents, state_.append(r, p, std::move(speech)));

    if (cfg.enable_reasoning && a.handles(Action::kReason)) {
      auto res = act_reason(a, inspected_context(p, Action::kReason),
                            cfg.max_reprompts);
      state_.append(r, p,
                    ReasoningRecord{std::move(res.inference), res.attempts,
                                    std::move(res.raw)});
    }
  }

  if (r == 1 && options_.tom_probes) run_probes(agents, order);

  for (auto& a : agents) a->on_phase(r, Phase::kVoting);
  std::vector<Ballot> ballots;
  for (PlayerId voter : order) {
    std::vector<PlayerId> options =
        cfg.randomize_option_order ? vote_options(state_.survivors, voter, state_.rng)
                                   : without(state_.survivors, voter);
    auto res = act_vote(agent(agents, voter), inspected_context(voter, Action::kVote),
                        options, cfg.max_reprompts, state_.rng);
    ballots.push_back({voter, res.choice});
    publish(agents, state_.append(r, voter,
                                  VoteRecord{res.choice, std::move(options),
                                             res.fallback, res.attempts}));
  }

  EliminationRecord elimination = tally_votes(ballots, state_.survivors, state_.rng);
  PlayerId out = elimination.player;
  state_.survivors.erase(
      std::find(state_.survivors.begin(), state_.survivors.end(), out));
  publish(agents, state_.append(r, std::nullopt, std::move(elimination)));

  if (auto outcome = check_victory(state_)) {
    state_.append(r, std::nullopt, *outcome);
    for (auto& a : agents) a->on_game_over(*outcome);
  }
  ++state_.round;
}

bool Game::finished() const {
  if (state_.history.empty()) return false;
  auto t = state_.history.back().type();
  return t == EventType::kOutcome || t == EventType::kAborted;
}

void Game::abort(AgentSet& agents, const std::string& reason) {
  if (finished()) return;
  state_.append(state_.round, std::nullopt, AbortedRecord{reason});
  for (auto& a : agents) a->on_game_aborted(reason);
}

GameLog Game::log() const { return GameLog{state_.game_id, state_.history}; }

namespace {

GameLog drive(Game& game, AgentSet& agents) {
  if (static_cast<int>(agents.size()) != game.state().config.n_players) {
    throw Error(ErrorCode::kInvalidConfig, "agent count does not match n_players");
  }
  try {
    game.start(agents);
    while (!game.finished()) game.run_round(agents);
  } catch (const Error& e) {
    game.abort(agents, e.what());
  }
  return game.log();
}

}  // namespace

GameLog run_game(const GameConfig& config, const KeywordPair& pair,
                 AgentSet& agents, const RunOptions& options) {
  Game game(config, pair, options);
  return drive(game, agents);
}

GameLog run_game(const GameConfig& config, const KeywordPair& pair,
                 const AgentProvider& provider, const RunOptions& options) {
  Game game(config, pair, options);
  AgentSet agents = provider(game.setup());
  return drive(game, agents);
}

}  // namespace spygame
