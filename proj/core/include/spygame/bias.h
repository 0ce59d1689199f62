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

#ifndef SPYGAME_BIAS_H_
#define SPYGAME_BIAS_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "spygame/game.h"

namespace spygame {

enum class Grouping { kByName, kBySpeakingPosition, kByOptionPosition };

std::string_view to_string(Grouping grouping);

// Share of first-round votes per key. Keys are roster names, or 1-based
// speaking / option positions, and always cover the whole domain.
struct SuspicionDistribution {
  Grouping grouping = Grouping::kByName;
  std::vector<std::pair<std::string, int>> counts;  // domain order
  int total = 0;

  double share(std::string_view key) const;
  std::vector<double> shares() const;
};

struct ContentFreeBatch {
  GameConfig base;  // seed is the master seed
  KeywordPair pair{"apple", "pear", "en", "content-free"};
  int n_games = 1;
  // Game k opens with the (k mod N!)-th permutation of the seats, so every
  // seat holds every speaking position equally often over N! games.
  bool balanced_order = true;
  int parallelism = 1;
};

// k-th permutation of seats 1..n in lexicographic order (factorial number
// system). Requires n <= 12.
std::vector<PlayerId> nth_permutation(int n, std::uint64_t k);

// Speech is forced to "..."; word guessing and reasoning are off. Game k uses
// seed derive_seed({base.seed, k}). Throws Error(kInvalidConfig) if
// n_games < 1.
std::vector<GameLog> run_content_free(const ContentFreeBatch& batch, int naming_method,
                                      const AgentProvider& agents);

// Throws Error(kEmptyLogs) when there are no first-round votes.
SuspicionDistribution suspicion_distribution(std::span<const GameLog> logs,
                                             Grouping grouping);

struct MitigationReport {
  bool speaking_orders_vary = false;
  bool option_orders_vary = false;
  double max_speaking_deviation = 0;  // max |share - 1/N| over positions
  double max_option_deviation = 0;    // max |share - 1/(N-1)| over positions
};

MitigationReport mitigation_check(std::span<const GameLog> logs);

// Counts and shares (percent, two decimals) for all three groupings plus the
// mitigation summary.
nlohmann::json bias_report(std::span<const GameLog> logs);

}  // namespace spygame

#endif  // SPYGAME_BIAS_H_
