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

#include <benchmark/benchmark.h>

#include "spygame/experiment.h"
#include "spygame/log_io.h"

namespace spygame {
namespace {

GameLog sample_log() {
  GameConfig config;
  config.seed = 7;
  RunOptions options;
  options.game_id = "bench";
  options.tom_probes = true;
  AgentProvider provider = [](const GameSetup& setup) {
    BackendFactory factory;
    AgentSet agents;
    for (int seat = 1; seat <= setup.config.n_players; ++seat) {
      agents.push_back(factory.make("scripted:naive+uniform+guess=x", setup, player(seat)));
    }
    return agents;
  };
  return run_game(config, {"BERT", "GPT", "en", "AI"}, provider, options);
}

void BM_SerializeLog(benchmark::State& state) {
  const GameLog log = sample_log();
  std::size_t bytes = 0;
  for (auto _ : state) {
    std::string text = serialize_log(log);
    bytes += text.size();
    benchmark::DoNotOptimize(text);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_SerializeLog);

void BM_ParseLog(benchmark::State& state) {
  const std::string text = serialize_log(sample_log());
  for (auto _ : state) benchmark::DoNotOptimize(parse_log(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseLog);

}  // namespace
}  // namespace spygame
