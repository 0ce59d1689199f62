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

#ifndef SPYGAME_TYPES_H_
#define SPYGAME_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spygame {

// 1-based seat number. Display names come from the naming roster.
enum class PlayerId : int {};

constexpr int index_of(PlayerId p) { return static_cast<int>(p); }
constexpr PlayerId player(int index) { return PlayerId{index}; }

enum class Role { kSpy, kVillager };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view s);

enum class Team { kSpy, kVillager };

std::string_view to_string(Team team);
std::optional<Team> parse_team(std::string_view s);

struct KeywordPair {
  std::string word_a;
  std::string word_b;
  std::string language = "en";
  std::string domain;

  // Throws Error(kInvalidPair) if a word is empty or both words collide after
  // normalization.
  void validate() const;

  friend bool operator==(const KeywordPair&, const KeywordPair&) = default;
};

// Which word of the pair the spy team receives.
enum class SpyWord { kRandom, kWordA, kWordB };

struct GameConfig {
  int n_players = 4;
  int n_spies = 1;
  int guest_index = 1;
  int naming_method = 1;
  std::uint64_t seed = 0;
  bool enable_word_guessing = true;
  bool enable_reasoning = true;
  int max_reprompts = 3;
  // Bias mitigations: shuffle speaking order each round and option order for
  // each voter. When off, both follow seat order.
  bool randomize_speaking_order = true;
  bool randomize_option_order = true;
  // Content-free play: every speech is "..." and no backend is asked to speak.
  bool content_free = false;
  SpyWord spy_word = SpyWord::kRandom;
  // Forced speaking order for round 1 (position-balanced bias batches).
  std::optional<std::vector<PlayerId>> first_round_order;

  // Throws Error(kInvalidConfig).
  void validate() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

struct Assignment {
  Role role;
  std::string keyword;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

using Assignments = std::map<PlayerId, Assignment>;

// Display names for seats 1..n. Method 1: "Player k" for any n. Methods 2 and
// 3 are fixed four-name tables. Throws Error(kUnsupportedN) for methods 2/3
// with n != 4 and Error(kInvalidConfig) for unknown methods.
std::vector<std::string> naming_roster(int method, int n);

}  // namespace spygame

#endif  // SPYGAME_TYPES_H_
