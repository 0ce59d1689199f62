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

#ifndef SPYGAME_EVENTS_H_
#define SPYGAME_EVENTS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spygame/types.h"

namespace spygame {

enum class Violation { kKeywordLeak, kDuplicate, kFallback };

std::string_view to_string(Violation v);

// A player's belief about every surviving player, including themself.
struct FirstOrderInference {
  struct Entry {
    PlayerId player;
    std::string keyword;
    Role identity;

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;

  const Entry* find(PlayerId p) const;
  int spy_count() const;

  friend bool operator==(const FirstOrderInference&,
                         const FirstOrderInference&) = default;
};

// What a player predicts the others believe about them.
struct SecondOrderInference {
  std::string keyword;
  Role identity;

  friend bool operator==(const SecondOrderInference&,
                         const SecondOrderInference&) = default;
};

struct ConfigRecord {
  GameConfig config;
  KeywordPair pair;
  std::vector<std::string> roster;
  std::vector<std::string> backends;

  friend bool operator==(const ConfigRecord&, const ConfigRecord&) = default;
};

// Private ground truth. Never rendered into agent contexts.
struct AssignmentRecord {
  Assignments assignments;

  friend bool operator==(const AssignmentRecord&,
                         const AssignmentRecord&) = default;
};

struct SpeechRecord {
  std::string text;
  std::vector<Violation> violations;
  int attempts = 1;

  bool is_fallback() const;

  friend bool operator==(const SpeechRecord&, const SpeechRecord&) = default;
};

struct GuessRecord {
  std::string guess;
  bool flagged = false;
  int attempts = 1;

  friend bool operator==(const GuessRecord&, const GuessRecord&) = default;
};

struct ReasoningRecord {
  std::optional<FirstOrderInference> inference;  // empty when invalid
  int attempts = 1;
  std::string raw;

  friend bool operator==(const ReasoningRecord&,
                         const ReasoningRecord&) = default;
};

struct VoteRecord {
  PlayerId choice;
  std::vector<PlayerId> options;  // as presented to the voter
  bool fallback = false;
  int attempts = 1;

  friend bool operator==(const VoteRecord&, const VoteRecord&) = default;
};

struct EliminationRecord {
  PlayerId player;
  std::map<PlayerId, int> tally;
  bool tie_broken = false;

  friend bool operator==(const EliminationRecord&,
                         const EliminationRecord&) = default;
};

enum class ProbeOrder { kFirst, kSecond };

struct ProbeRecord {
  ProbeOrder order = ProbeOrder::kFirst;
  std::optional<FirstOrderInference> first;
  std::optional<SecondOrderInference> second;
  int attempts = 1;
  std::string raw;

  bool valid() const { return first.has_value() || second.has_value(); }

  friend bool operator==(const ProbeRecord&, const ProbeRecord&) = default;
};

struct OutcomeRecord {
  Team winner;
  int rounds_played = 0;

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

struct AbortedRecord {
  std::string reason;

  friend bool operator==(const AbortedRecord&, const AbortedRecord&) = default;
};

using EventPayload =
    std::variant<ConfigRecord, AssignmentRecord, SpeechRecord, GuessRecord,
                 ReasoningRecord, VoteRecord, EliminationRecord, ProbeRecord,
                 OutcomeRecord, AbortedRecord>;

enum class EventType {
  kConfig,
  kAssignment,
  kSpeech,
  kGuess,
  kReasoning,
  kVote,
  kElimination,
  kProbe,
  kOutcome,
  kAborted,
};

std::string_view to_string(EventType type);
std::optional<EventType> parse_event_type(std::string_view s);

struct Event {
  int seq = 0;
  int round = 0;
  std::optional<PlayerId> actor;
  EventPayload payload;

  EventType type() const { return static_cast<EventType>(payload.index()); }

  // Speech, vote and elimination records form the public history.
  bool is_public() const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }

  friend bool operator==(const Event&, const Event&) = default;
};

struct GameLog {
  std::string game_id;
  std::vector<Event> events;

  const ConfigRecord* config() const;
  const Assignments* assignments() const;
  const OutcomeRecord* outcome() const;
  const AbortedRecord* aborted() const;
  bool complete() const { return outcome() != nullptr; }

  friend bool operator==(const GameLog&, const GameLog&) = default;
};

nlohmann::json to_json(const GameConfig& config);
GameConfig game_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KeywordPair& pair);
KeywordPair keyword_pair_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FirstOrderInference& inference);
FirstOrderInference first_order_from_json(const nlohmann::json& j);

nlohmann::json payload_to_json(const EventPayload& payload);
// Throws nlohmann::json exceptions or Error(kCorruptRecord) on bad shape.
EventPayload payload_from_json(EventType type, const nlohmann::json& j);

}  // namespace spygame

#endif  // SPYGAME_EVENTS_H_
