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

#include "spygame/bias.h"

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "spygame/error.h"
#include "spygame/parallel.h"

namespace spygame {
namespace {

std::vector<PlayerId> first_round_speakers(const GameLog& log) {
  std::vector<PlayerId> out;
  for (const auto& e : log.events) {
    if (e.round == 1 && e.type() == EventType::kSpeech) out.push_back(*e.actor);
  }
  return out;
}

double percent2(double share) { return std::round(share * 10000.0) / 100.0; }

}  // namespace

std::string_view to_string(Grouping grouping) {
  switch (grouping) {
    case Grouping::kByName: return "name";
    case Grouping::kBySpeakingPosition: return "speaking_position";
    case Grouping::kByOptionPosition: return "option_position";
  }
  return "";
}

double SuspicionDistribution::share(std::string_view key) const {
  for (const auto& [k, n] : counts) {
    if (k == key) return total ? static_cast<double>(n) / total : 0.0;
  }
  return 0.0;
}

std::vector<double> SuspicionDistribution::shares() const {
  std::vector<double> out;
  for (const auto& [k, n] : counts) {
    out.push_back(total ? static_cast<double>(n) / total : 0.0);
  }
  return out;
}

std::vector<PlayerId> nth_permutation(int n, std::uint64_t k) {
  if (n < 1 || n > 12) throw Error(ErrorCode::kInvalidConfig, "permutation size");
  std::vector<int> pool;
  std::uint64_t fact = 1;
  for (int i = 1; i <= n; ++i) {
    pool.push_back(i);
    fact *= static_cast<std::uint64_t>(i);
  }
  k %= fact;
  std::vector<PlayerId> out;
  for (int remaining = n; remaining > 0; --remaining) {
    fact /= static_cast<std::uint64_t>(remaining);
    const auto idx = static_cast<std::size_t>(k / fact);
    k %= fact;
    out.push_back(player(pool[idx]));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

std::vector<GameLog> run_content_free(const ContentFreeBatch& batch, int naming_method,
                                      const AgentProvider& agents) {
  if (batch.n_games < 1) throw Error(ErrorCode::kInvalidConfig, "n_games must be >= 1");
  GameConfig base = batch.base;
  base.naming_method = naming_method;
  base.content_free = true;
  base.enable_word_guessing = false;
  base.enable_reasoning = false;
  base.validate();

  std::vector<GameLog> logs(static_cast<std::size_t>(batch.n_games));
  parallel_for(logs.size(), batch.parallelism, [&](std::size_t k) {
    GameConfig config = base;
    config.seed = derive_seed({batch.base.seed, static_cast<std::uint64_t>(k)});
    if (batch.balanced_order) config.first_round_order = nth_permutation(config.n_players, k);
    RunOptions options;
    options.game_id = "content-free-" + std::to_string(k);
    logs[k] = run_game(config, batch.pair, agents, options);
  });
  return logs;
}

SuspicionDistribution suspicion_distribution(std::span<const GameLog> logs,
                                             Grouping grouping) {
  if (logs.empty()) throw Error(ErrorCode::kEmptyLogs, "no logs");
  SuspicionDistribution dist;
  dist.grouping = grouping;
  std::map<std::string, int> tally;
  std::vector<std::string> domain;

  for (const auto& log : logs) {
    const ConfigRecord* config = log.config();
    if (config == nullptr) continue;
    const int n = config->config.n_players;
    if (domain.empty()) {
      if (grouping == Grouping::kByName) {
        domain = config->roster;
      } else {
        const int positions = grouping == Grouping::kByOptionPosition ? n - 1 : n;
        for (int i = 1; i <= positions; ++i) domain.push_back(std::to_string(i));
      }
    }
    const auto speakers = first_round_speakers(log);
    for (const auto& e : log.events) {
      if (e.round != 1) continue;
      const auto* vote = e.as<VoteRecord>();
      if (vote == nullptr) continue;
      std::string key;
      switch (grouping) {
        case Grouping::kByName:
          key = config->roster.at(static_cast<std::size_t>(index_of(vote->choice) - 1));
          break;
        case Grouping::kBySpeakingPosition:
          for (std::size_t i = 0; i < speakers.size(); ++i) {
            if (speakers[i] == vote->choice) key = std::to_string(i + 1);
          }
          break;
        case Grouping::kByOptionPosition:
          for (std::size_t i = 0; i < vote->options.size(); ++i) {
            if (vote->options[i] == vote->choice) key = std::to_string(i + 1);
          }
          break;
      }
      if (key.empty()) continue;
      ++tally[key];
      ++dist.total;
    }
  }
  if (dist.total == 0) throw Error(ErrorCode::kEmptyLogs, "no first-round votes");
  for (const auto& key : domain) dist.counts.emplace_back(key, tally[key]);
  for (const auto& [key, n] : tally) {
    bool known = false;
    for (const auto& d : domain) known = known || d == key;
    if (!known) dist.counts.emplace_back(key, n);  // mixed rosters across logs
  }
  return dist;
}

MitigationReport mitigation_check(std::span<const GameLog> logs) {
  MitigationReport report;
  std::set<std::vector<PlayerId>> speaking;
  std::map<std::set<PlayerId>, std::set<std::vector<PlayerId>>> options_by_set;
  for (const auto& log : logs) {
    std::map<int, std::vector<PlayerId>> by_round;
    for (const auto& e : log.events) {
      if (e.type() == EventType::kSpeech) by_round[e.round].push_back(*e.actor);
      if (const auto* v = e.as<VoteRecord>()) {
        options_by_set[std::set<PlayerId>(v->options.begin(), v->options.end())]
            .insert(v->options);
      }
    }
    for (auto& [r, order] : by_round) speaking.insert(order);
  }
  // Orders of different lengths are not comparable; compare per length.
  std::map<std::size_t, int> per_length;
  for (const auto& o : speaking) ++per_length[o.size()];
  for (const auto& [len, count] : per_length) {
    report.speaking_orders_vary = report.speaking_orders_vary || count > 1;
  }
  for (const auto& [set, orders] : options_by_set) {
    report.option_orders_vary = report.option_orders_vary || orders.size() > 1;
  }
  auto max_dev = [&](Grouping g) {
    SuspicionDistribution d = suspicion_distribution(logs, g);
    const double uniform = 1.0 / static_cast<double>(d.counts.size());
    double worst = 0;
    for (double s : d.shares()) worst = std::max(worst, std::abs(s - uniform));
    return worst;
  };
  report.max_speaking_deviation = max_dev(Grouping::kBySpeakingPosition);
  report.max_option_deviation = max_dev(Grouping::kByOptionPosition);
  return report;
}

nlohmann::json bias_report(std::span<const GameLog> logs) {
  using nlohmann::json;
  json out;
  out["games"] = logs.size();
  for (Grouping g : {Grouping::kByName, Grouping::kBySpeakingPosition,
                     Grouping::kByOptionPosition}) {
    SuspicionDistribution d = suspicion_distribution(logs, g);
    json rows = json::array();
    for (const auto& [key, n] : d.counts) {
      rows.push_back({{"key", key},
                      {"votes", n},
                      {"percent", percent2(d.total ? static_cast<double>(n) / d.total : 0)}});
    }
    out[std::string(to_string(g))] = {{"total", d.total}, {"rows", std::move(rows)}};
  }
  MitigationReport m = mitigation_check(logs);
  out["mitigation"] = {{"speaking_orders_vary", m.speaking_orders_vary},
                       {"option_orders_vary", m.option_orders_vary},
                       {"max_speaking_deviation", m.max_speaking_deviation},
                       {"max_option_deviation", m.max_option_deviation}};
  return out;
}

}  // namespace spygame
