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

#include "spygame/types.h"

#include <algorithm>
#include <set>

#include "spygame/error.h"
#include "spygame/text.h"

namespace spygame {

std::string_view to_string(Role role) {
  return role == Role::kSpy ? "spy" : "villager";
}

std::optional<Role> parse_role(std::string_view s) {
  std::string n = text::normalize(s);
  if (n == "spy") return Role::kSpy;
  if (n == "villager") return Role::kVillager;
  return std::nullopt;
}

std::string_view to_string(Team team) {
  return team == Team::kSpy ? "spy" : "villager";
}

std::optional<Team> parse_team(std::string_view s) {
  std::string n = text::normalize(s);
  if (n == "spy") return Team::kSpy;
  if (n == "villager") return Team::kVillager;
  return std::nullopt;
}

void KeywordPair::validate() const {
  if (text::trim(word_a).empty() || text::trim(word_b).empty()) {
    throw Error(ErrorCode::kInvalidPair, "keyword must be non-empty");
  }
  if (text::normalize(word_a) == text::normalize(word_b)) {
    throw Error(ErrorCode::kInvalidPair,
                "'" + word_a + "' and '" + word_b + "' collide after normalization");
  }
}

void GameConfig::validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidConfig, why);
  };
  if (n_players < 3) fail("n_players must be at least 3");
  if (n_spies < 1) fail("n_spies must be at least 1");
  if (n_spies >= n_players - n_spies) fail("spy team must be the smaller team");
  if (guest_index < 1 || guest_index > n_players) {
    fail("guest_index out of range");
  }
  if (max_reprompts < 0) fail("max_reprompts must be non-negative");
  try {
    naming_roster(naming_method, n_players);
  } catch (const Error& e) {
    fail(e.what());
  }
  if (first_round_order) {
    std::set<int> seen;
    for (PlayerId p : *first_round_order) seen.insert(index_of(p));
    if (static_cast<int>(first_round_order->size()) != n_players ||
        static_cast<int>(seen.size()) != n_players || *seen.begin() != 1 ||
        *seen.rbegin() != n_players) {
      fail("first_round_order must be a permutation of all seats");
    }
  }
}

std::vector<std::string> naming_roster(int method, int n) {
  static const std::vector<std::string> kMethod2 = {
      "Aaron One", "Barbara Two", "Charlie Three", "David Four"};
  static const std::vector<std::string> kMethod3 = {"Jack", "Mary", "Alice",
                                                    "Tom"};
  switch (method) {
    case 1: {
      std::vector<std::string> names;
      for (int i = 1; i <= n; ++i) names.push_back("Player " + std::to_string(i));
      return names;
    }
    case 2:
    case 3:
      if (n != 4) {
        throw Error(ErrorCode::kUnsupportedN,
                    "naming method " + std::to_string(method) +
                        " is defined for 4 players only");
      }
      return method == 2 ? kMethod2 : kMethod3;
    default:
      throw Error(ErrorCode::kInvalidConfig,
                  "unknown naming method " + std::to_string(method));
  }
}

}  // namespace spygame
