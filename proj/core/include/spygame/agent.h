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

#ifndef SPYGAME_AGENT_H_
#define SPYGAME_AGENT_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spygame/events.h"
#include "spygame/rng.h"
#include "spygame/types.h"

namespace spygame {

// One line of the public history H.
struct HistoryEntry {
  enum class Kind { kSpeech, kVote, kElimination };

  int round = 0;
  Kind kind = Kind::kSpeech;
  PlayerId actor{};            // speaker, voter, or eliminated player
  std::string text;            // speech text
  std::optional<PlayerId> target;  // vote choice
  std::map<PlayerId, int> tally;   // elimination tally

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

// The information-hidden view handed to a player. Built only from the public
// history, the seating, and the player's own keyword and notes. There is no
// role field.
struct AgentContext {
  PlayerId self{};
  std::string self_name;
  std::string own_keyword;
  std::string language = "en";
  int round = 1;
  std::vector<std::string> roster;     // seat order
  std::vector<PlayerId> survivors;     // seat order
  std::vector<HistoryEntry> history;
  // The player's own earlier guesses and reasoning replies.
  std::vector<std::string> own_notes;

  const std::string& name_of(PlayerId p) const;
  std::vector<std::string> survivor_names() const;
};

std::string render_history(const AgentContext& ctx);

enum class Action { kSpeak, kGuessWord, kReason, kVote, kProbeFirst, kProbeSecond };

std::string_view to_string(Action action);

struct AgentRequest {
  Action action = Action::kSpeak;
  std::vector<PlayerId> options;  // kVote only, in presentation order
  int attempt = 0;                // 0 for the first ask
  std::string previous_reply;
  // Catalog id of the message explaining why the previous reply was
  // rejected, e.g. "feedback.keyword_leak". Empty on the first ask.
  std::string feedback_id;
};

enum class Phase { kSpeaking, kVoting };

std::string_view to_string(Phase phase);

// A seat's decision maker. Replies are raw text in the grammar of the request
// and are parsed by the act_* functions below.
class AgentBackend {
 public:
  virtual ~AgentBackend() = default;

  virtual std::string label() const = 0;
  virtual bool handles(Action) const { return true; }

  // Returns std::nullopt when no reply arrived in time. Throws Error for
  // unrecoverable faults.
  virtual std::optional<std::string> respond(const AgentContext& ctx,
                                             const AgentRequest& request) = 0;

  virtual void on_game_start(const AgentContext&) {}
  virtual void on_phase(int /*round*/, Phase) {}
  virtual void on_public_event(const HistoryEntry&) {}
  virtual void on_game_over(const OutcomeRecord&) {}
  virtual void on_game_aborted(const std::string& /*reason*/) {}
};

// agents[i] plays seat i + 1.
using AgentSet = std::vector<std::unique_ptr<AgentBackend>>;

// --- Reply parsers. All total: a value or std::nullopt, never a throw. ---

std::optional<std::string> parse_guess(std::string_view reply);

// Index into `option_names`. Exact (normalized) match wins; otherwise the
// unique option mentioned as a whole phrase. Ambiguity yields nullopt.
std::optional<std::size_t> parse_vote(std::string_view reply,
                                      const std::vector<std::string>& option_names);

// Requires an entry for every player in `players` and exactly one spy.
std::optional<FirstOrderInference> parse_first_order(
    std::string_view reply, const std::vector<PlayerId>& players,
    const std::vector<std::string>& roster);

std::optional<SecondOrderInference> parse_second_order(std::string_view reply);

// --- Actions with re-prompt policy. ---

// Returns the violation for a candidate description, or nullopt if valid.
using DescriptionCheck = std::function<std::optional<Violation>(std::string_view)>;

struct SpeakResult {
  std::string text;
  std::vector<Violation> violations;
  int attempts = 0;
};

// Re-prompts up to `max_reprompts` times on a violation or empty reply, then
// falls back to "..." flagged Fallback.
SpeakResult act_speak(AgentBackend& backend, const AgentContext& ctx,
                      const DescriptionCheck& check, int max_reprompts);

inline constexpr std::string_view kFallbackSpeech = "...";

// One re-prompt on an empty reply, then an empty flagged guess.
GuessRecord act_guess_word(AgentBackend& backend, const AgentContext& ctx);

struct InferenceResult {
  std::optional<FirstOrderInference> inference;
  int attempts = 0;
  std::string raw;
};

// `action` is kReason or kProbeFirst. Invalid after max_reprompts retries.
InferenceResult act_reason(AgentBackend& backend, const AgentContext& ctx,
                           int max_reprompts, Action action = Action::kReason);

struct SecondOrderResult {
  std::optional<SecondOrderInference> inference;
  int attempts = 0;
  std::string raw;
};

SecondOrderResult act_probe_second(AgentBackend& backend, const AgentContext& ctx,
                                   int max_reprompts);

struct VoteResult {
  PlayerId choice{};
  bool fallback = false;
  int attempts = 0;
};

// Falls back to a uniform draw from `options` using `rng` after
// max_reprompts retries.
VoteResult act_vote(AgentBackend& backend, const AgentContext& ctx,
                    const std::vector<PlayerId>& options, int max_reprompts,
                    Rng& rng);

}  // namespace spygame

#endif  // SPYGAME_AGENT_H_
