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

#ifndef SPYGAME_EXPERIMENT_H_
#define SPYGAME_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spygame/game.h"
#include "spygame/llm.h"
#include "spygame/metrics.h"

namespace spygame {

// Turns seat spec strings into backends:
//   scripted:<policy>   ScriptedBackend (see scripted.h)
//   mock:<mock spec>    chat agent over MockChatModel::from_spec
//   remote:<name>       chat agent over the named BackendSpec
//   human               delegated to the human hook, if one is set
// Chat models are created once per spec and shared by every seat and game.
class BackendFactory {
 public:
  using HumanHook = std::function<std::unique_ptr<AgentBackend>(const GameSetup&, PlayerId)>;

  BackendFactory(std::map<std::string, BackendSpec> remotes = {},
                 CompletionParams params = {}, RetryPolicy retry = {});

  void set_human_hook(HumanHook hook) { human_ = std::move(hook); }
  // Wraps every chat model created from now on in a RecordingChatModel.
  void enable_recording() { recording_ = true; }
  // Union of all recorded digest -> reply entries.
  std::map<std::string, std::string> recorded() const;

  // Scripted seats are seeded with derive_seed({game seed, seat}).
  std::unique_ptr<AgentBackend> make(const std::string& spec, const GameSetup& setup,
                                     PlayerId seat);
  // For "mock:..." and "remote:..." specs.
  std::shared_ptr<ChatModel> chat_model(const std::string& spec);

  // Throws Error(kInvalidConfig) for a malformed spec without building it.
  void check(const std::string& spec) const;

 private:
  std::map<std::string, BackendSpec> remotes_;
  CompletionParams params_;
  RetryPolicy retry_;
  HumanHook human_;
  bool recording_ = false;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<ChatModel>> models_;
  std::vector<std::shared_ptr<RecordingChatModel>> recorders_;
};

struct ExperimentConfig {
  std::string name = "experiment";
  GameConfig game;  // game.seed is the master seed
  std::string keywords_path;
  std::vector<KeywordPair> pairs;  // used when keywords_path is empty
  int n_games = 1;                 // per pair; directions alternate a, b, a, ...
  std::string guest = "scripted:generic";
  // One spec for every host seat, or one per host seat in seat order.
  std::vector<std::string> hosts{"scripted:generic"};
  int parallelism = 1;
  std::filesystem::path out_dir;  // empty: keep logs in memory only
  bool tom_probes = false;
  std::map<std::string, BackendSpec> remotes;
  CompletionParams params;
  RetryPolicy retry;

  // Throws Error(kInvalidConfig).
  void validate() const;
};

// JSON experiment file. Keys mirror the CLI flags; see docs/experiment.md.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// <experiment>/<pair index, zero padded>/<a|b>/<k>.log
std::filesystem::path log_relative_path(const std::string& experiment,
                                        std::size_t pair_index, std::size_t n_pairs,
                                        char direction, int k);

// Seed of game k for a pair and direction (0 = spies hold word_a).
std::uint64_t game_seed(std::uint64_t master, std::size_t pair_index, int direction,
                        int k);

struct ExperimentResult {
  std::vector<GameLog> logs;
  std::vector<std::filesystem::path> files;
  MetricsReport metrics;  // complete games only; `incomplete` counts the rest
  std::map<std::string, MetricsReport> by_direction;
};

ExperimentResult run_experiment(const ExperimentConfig& config,
                                BackendFactory* factory = nullptr);

}  // namespace spygame

#endif  // SPYGAME_EXPERIMENT_H_
