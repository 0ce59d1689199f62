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

#include "spygame/events.h"

#include <nlohmann/json.hpp>

#include "spygame/error.h"

namespace spygame {

using json = nlohmann::json;

namespace {

constexpr std::string_view kEventTypeNames[] = {
    "Config", "Assignment", "Speech",      "Guess", "Reasoning",
    "Vote",   "Elimination", "Probe", "Outcome", "Aborted"};

std::string_view spy_word_name(SpyWord w) {
  switch (w) {
    case SpyWord::kRandom: return "random";
    case SpyWord::kWordA: return "word_a";
    case SpyWord::kWordB: return "word_b";
  }
  return "random";
}

SpyWord parse_spy_word(const std::string& s) {
  if (s == "random") return SpyWord::kRandom;
  if (s == "word_a") return SpyWord::kWordA;
  if (s == "word_b") return SpyWord::kWordB;
  throw Error(ErrorCode::kCorruptRecord, "unknown spy_word '" + s + "'");
}

Role role_from_json(const json& j) {
  auto r = parse_role(j.get<std::string>());
  if (!r) throw Error(ErrorCode::kCorruptRecord, "bad role " + j.dump());
  return *r;
}

Violation violation_from_string(const std::string& s) {
  if (s == "KeywordLeak") return Violation::kKeywordLeak;
  if (s == "Duplicate") return Violation::kDuplicate;
  if (s == "Fallback") return Violation::kFallback;
  throw Error(ErrorCode::kCorruptRecord, "unknown violation '" + s + "'");
}

json players_to_json(const std::vector<PlayerId>& players) {
  json arr = json::array();
  for (PlayerId p : players) arr.push_back(index_of(p));
  return arr;
}

std::vector<PlayerId> players_from_json(const json& j) {
  std::vector<PlayerId> out;
  for (const auto& v : j) out.push_back(player(v.get<int>()));
  return out;
}

struct PayloadWriter {
  json operator()(const ConfigRecord& r) const {
    return {{"config", to_json(r.config)},
            {"pair", to_json(r.pair)},
            {"roster", r.roster},
            {"backends", r.backends}};
  }
  json operator()(const AssignmentRecord& r) const {
    json arr = json::array();
    for (const auto& [p, a] : r.assignments) {
      arr.push_back({{"player", index_of(p)},
                     {"role", to_string(a.role)},
                     {"keyword", a.keyword}});
    }
    return {{"assignments", arr}};
  }
  json operator()(const SpeechRecord& r) const {
    json v = json::array();
    for (Violation x : r.violations) v.push_back(to_string(x));
    return {{"text", r.text}, {"violations", v}, {"attempts", r.attempts}};
  }
  json operator()(const GuessRecord& r) const {
    return {{"guess", r.guess}, {"flagged", r.flagged}, {"attempts", r.attempts}};
  }
  json operator()(const ReasoningRecord& r) const {
    return {{"inference", r.inference ? to_json(*r.inference) : json(nullptr)},
            {"valid", r.inference.has_value()},
            {"attempts", r.attempts},
            {"raw", r.raw}};
  }
  json operator()(const VoteRecord& r) const {
    return {{"choice", index_of(r.choice)},
            {"options", players_to_json(r.options)},
            {"fallback", r.fallback},
            {"attempts", r.attempts}};
  }
  json operator()(const EliminationRecord& r) const {
    json tally = json::array();
    for (const auto& [p, n] : r.tally) {
      tally.push_back({{"player", index_of(p)}, {"votes", n}});
    }
    return {{"player", index_of(r.player)},
            {"tally", tally},
            {"tie_broken", r.tie_broken}};
  }
  json operator()(const ProbeRecord& r) const {
    json j = {{"order", r.order == ProbeOrder::kFirst ? "first" : "second"},
              {"valid", r.valid()},
              {"attempts", r.attempts},
              {"raw", r.raw}};
    if (r.order == ProbeOrder::kFirst) {
      j["inference"] = r.first ? to_json(*r.first) : json(nullptr);
    } else if (r.second) {
      j["inference"] = {{"keyword", r.second->keyword},
                        {"identity", to_string(r.second->identity)}};
    } else {
      j["inference"] = nullptr;
    }
    return j;
  }
  json operator()(const OutcomeRecord& r) const {
    return {{"winner", to_string(r.winner)}, {"rounds_played", r.rounds_played}};
  }
  json operator()(const AbortedRecord& r) const {
    return {{"reason", r.reason}};
  }
};

}  // namespace

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::kKeywordLeak: return "KeywordLeak";
    case Violation::kDuplicate: return "Duplicate";
    case Violation::kFallback: return "Fallback";
  }
  return "";
}

const FirstOrderInference::Entry* FirstOrderInference::find(PlayerId p) const {
  for (const auto& e : entries) {
    if (e.player == p) return &e;
  }
  return nullptr;
}

int FirstOrderInference::spy_count() const {
  int n = 0;
  for (const auto& e : entries) n += e.identity == Role::kSpy ? 1 : 0;
  return n;
}

bool SpeechRecord::is_fallback() const {
  for (Violation v : violations) {
    if (v == Violation::kFallback) return true;
  }
  return false;
}

std::string_view to_string(EventType type) {
  return kEventTypeNames[static_cast<int>(type)];
}

std::optional<EventType> parse_event_type(std::string_view s) {
  for (int i = 0; i < static_cast<int>(std::size(kEventTypeNames)); ++i) {
    if (kEventTypeNames[i] == s) return static_cast<EventType>(i);
  }
  return std::nullopt;
}

bool Event::is_public() const {
  auto t = type();
  return t == EventType::kSpeech || t == EventType::kVote ||
         t == EventType::kElimination;
}

const ConfigRecord* GameLog::config() const {
  for (const auto& e : events) {
    if (auto* r = e.as<ConfigRecord>()) return r;
  }
  return nullptr;
}

const Assignments* GameLog::assignments() const {
  for (const auto& e : events) {
    if (auto* r = e.as<AssignmentRecord>()) return &r->assignments;
  }
  return nullptr;
}

const OutcomeRecord* GameLog::outcome() const {
  if (events.empty()) return nullptr;
  return events.back().as<OutcomeRecord>();
}

const AbortedRecord* GameLog::aborted() const {
  if (events.empty()) return nullptr;
  return events.back().as<AbortedRecord>();
}

json to_json(const GameConfig& c) {
  json j = {{"n_players", c.n_players},
            {"n_spies", c.n_spies},
            {"guest_index", c.guest_index},
            {"naming_method", c.naming_method},
            {"seed", c.seed},
            {"enable_word_guessing", c.enable_word_guessing},
            {"enable_reasoning", c.enable_reasoning},
            {"max_reprompts", c.max_reprompts},
            {"randomize_speaking_order", c.randomize_speaking_order},
            {"randomize_option_order", c.randomize_option_order},
            {"content_free", c.content_free},
            {"spy_word", spy_word_name(c.spy_word)}};
  j["first_round_order"] =
      c.first_round_order ? players_to_json(*c.first_round_order) : json(nullptr);
  return j;
}

GameConfig game_config_from_json(const json& j) {
  GameConfig c;
  c.n_players = j.at("n_players").get<int>();
  c.n_spies = j.at("n_spies").get<int>();
  c.guest_index = j.at("guest_index").get<int>();
  c.naming_method = j.at("naming_method").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.enable_word_guessing = j.at("enable_word_guessing").get<bool>();
  c.enable_reasoning = j.at("enable_reasoning").get<bool>();
  c.max_reprompts = j.at("max_reprompts").get<int>();
  c.randomize_speaking_order = j.at("randomize_speaking_order").get<bool>();
  c.randomize_option_order = j.at("randomize_option_order").get<bool>();
  c.content_free = j.at("content_free").get<bool>();
  c.spy_word = parse_spy_word(j.at("spy_word").get<std::string>());
  if (!j.at("first_round_order").is_null()) {
    c.first_round_order = players_from_json(j.at("first_round_order"));
  }
  return c;
}

json to_json(const KeywordPair& p) {
  return {{"word_a", p.word_a},
          {"word_b", p.word_b},
          {"language", p.language},
          {"domain", p.domain}};
}

KeywordPair keyword_pair_from_json(const json& j) {
  return {j.at("word_a").get<std::string>(), j.at("word_b").get<std::string>(),
          j.at("language").get<std::string>(), j.at("domain").get<std::string>()};
}

json to_json(const FirstOrderInference& inference) {
  json arr = json::array();
  for (const auto& e : inference.entries) {
    arr.push_back({{"player", index_of(e.player)},
                   {"keyword", e.keyword},
                   {"identity", to_string(e.identity)}});
  }
  return arr;
}

FirstOrderInference first_order_from_json(const json& j) {
  FirstOrderInference out;
  for (const auto& e : j) {
    out.entries.push_back({player(e.at("player").get<int>()),
                           e.at("keyword").get<std::string>(),
                           role_from_json(e.at("identity"))});
  }
  return out;
}

json payload_to_json(const EventPayload& payload) {
  return std::visit(PayloadWriter{}, payload);
}

EventPayload payload_from_json(EventType type, const json& j) {
  switch (type) {
    case EventType::kConfig:
      return ConfigRecord{game_config_from_json(j.at("config")),
                          keyword_pair_from_json(j.at("pair")),
                          j.at("roster").get<std::vector<std::string>>(),
                          j.at("backends").get<std::vector<std::string>>()};
    case EventType::kAssignment: {
      AssignmentRecord r;
      for (const auto& a : j.at("assignments")) {
        r.assignments[player(a.at("player").get<int>())] =
            Assignment{role_from_json(a.at("role")),
                       a.at("keyword").get<std::string>()};
      }
      return r;
    }
    case EventType::kSpeech: {
      SpeechRecord r;
      r.text = j.at("text").get<std::string>();
      for (const auto& v : j.at("violations")) {
        r.violations.push_back(violation_from_string(v.get<std::string>()));
      }
      r.attempts = j.at("attempts").get<int>();
      return r;
    }
    case EventType::kGuess:
      return GuessRecord{j.at("guess").get<std::string>(),
                         j.at("flagged").get<bool>(), j.at("attempts").get<int>()};
    case EventType::kReasoning: {
      ReasoningRecord r;
      if (!j.at("inference").is_null()) {
        r.inference = first_order_from_json(j.at("inference"));
      }
      r.attempts = j.at("attempts").get<int>();
      r.raw = j.at("raw").get<std::string>();
      return r;
    }
    case EventType::kVote:
      return VoteRecord{player(j.at("choice").get<int>()),
                        players_from_json(j.at("options")),
                        j.at("fallback").get<bool>(), j.at("attempts").get<int>()};
    case EventType::kElimination: {
      EliminationRecord r;
      r.player = player(j.at("player").get<int>());
      for (const auto& t : j.at("tally")) {
        r.tally[player(t.at("player").get<int>())] = t.at("votes").get<int>();
      }
      r.tie_broken = j.at("tie_broken").get<bool>();
      return r;
    }
    case EventType::kProbe: {
      ProbeRecord r;
      std::string order = j.at("order").get<std::string>();
      if (order != "first" && order != "second") {
        throw Error(ErrorCode::kCorruptRecord, "bad probe order " + order);
      }
      r.order = order == "first" ? ProbeOrder::kFirst : ProbeOrder::kSecond;
      const json& inf = j.at("inference");
      if (!inf.is_null()) {
        if (r.order == ProbeOrder::kFirst) {
          r.first = first_order_from_json(inf);
        } else {
          r.second = SecondOrderInference{inf.at("keyword").get<std::string>(),
                                          role_from_json(inf.at("identity"))};
        }
      }
      r.attempts = j.at("attempts").get<int>();
      r.raw = j.at("raw").get<std::string>();
      return r;
    }
    case EventType::kOutcome: {
      auto team = parse_team(j.at("winner").get<std::string>());
      if (!team) throw Error(ErrorCode::kCorruptRecord, "bad winner");
      return OutcomeRecord{*team, j.at("rounds_played").get<int>()};
    }
    case EventType::kAborted:
      return AbortedRecord{j.at("reason").get<std::string>()};
  }
  throw Error(ErrorCode::kCorruptRecord, "unknown event type");
}

}  // namespace spygame
