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

#include "spygame/experiment.h"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "spygame/error.h"
#include "spygame/keywords.h"
#include "spygame/log_io.h"
#include "spygame/parallel.h"
#include "spygame/remote_agent.h"
#include "spygame/scripted.h"

namespace spygame {
namespace {

using nlohmann::json;

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

BackendSpec backend_spec_from_json(const json& j) {
  BackendSpec s;
  s.provider = j.value("provider", s.provider);
  s.model = j.at("model").get<std::string>();
  s.endpoint = j.at("endpoint").get<std::string>();
  s.credential = j.value("credential", s.credential);
  s.timeout = std::chrono::milliseconds(j.value("timeout_ms", s.timeout.count()));
  s.requests_per_second = j.value("requests_per_second", s.requests_per_second);
  return s;
}

}  // namespace

BackendFactory::BackendFactory(std::map<std::string, BackendSpec> remotes,
                               CompletionParams params, RetryPolicy retry)
    : remotes_(std::move(remotes)), params_(params), retry_(retry) {}

void BackendFactory::check(const std::string& spec) const {
  auto [kind, arg] = split_spec(spec);
  if (kind == "scripted") {
    parse_scripted_policy(arg);
  } else if (kind == "mock") {
    if (arg.empty()) throw Error(ErrorCode::kInvalidConfig, "mock needs a mode");
  } else if (kind == "remote") {
    if (!remotes_.count(arg)) {
      throw Error(ErrorCode::kInvalidConfig, "no remote backend named '" + arg + "'");
    }
  } else if (kind != "human") {
    throw Error(ErrorCode::kInvalidConfig, "unknown backend spec '" + spec + "'");
  }
}

std::shared_ptr<ChatModel> BackendFactory::chat_model(const std::string& spec) {
  std::lock_guard lock(mu_);
  if (auto it = models_.find(spec); it != models_.end()) return it->second;
  auto [kind, arg] = split_spec(spec);
  std::shared_ptr<ChatModel> model;
  if (kind == "mock") {
    model = MockChatModel::from_spec(arg);
  } else if (kind == "remote") {
    auto it = remotes_.find(arg);
    if (it == remotes_.end()) {
      throw Error(ErrorCode::kInvalidConfig, "no remote backend named '" + arg + "'");
    }
    model = std::make_shared<HttpChatModel>(it->second, retry_);
  } else {
    throw Error(ErrorCode::kInvalidConfig, "'" + spec + "' is not a chat model");
  }
  if (recording_) {
    auto recorder = std::make_shared<RecordingChatModel>(model);
    recorders_.push_back(recorder);
    model = recorder;
  }
  models_[spec] = model;
  return model;
}

std::map<std::string, std::string> BackendFactory::recorded() const {
  std::lock_guard lock(mu_);
  std::map<std::string, std::string> out;
  for (const auto& r : recorders_) {
    for (auto& [digest, reply] : r->recorded()) out[digest] = reply;
  }
  return out;
}

std::unique_ptr<AgentBackend> BackendFactory::make(const std::string& spec,
                                                   const GameSetup& setup, PlayerId seat) {
  auto [kind, arg] = split_spec(spec);
  if (kind == "scripted") {
    ScriptedPolicy policy = parse_scripted_policy(arg);
    std::optional<Assignments> truth;
    if (policy.needs_truth()) truth = setup.assignments;
    return std::make_unique<ScriptedBackend>(
        std::move(policy),
        derive_seed({setup.config.seed, static_cast<std::uint64_t>(index_of(seat))}),
        std::move(truth), spec);
  }
  if (kind == "human") {
    if (!human_) throw Error(ErrorCode::kInvalidConfig, "human seats need the serve command");
    return human_(setup, seat);
  }
  return std::make_unique<RemoteAgentBackend>(chat_model(spec), params_);
}

void ExperimentConfig::validate() const {
  game.validate();
  if (n_games < 1) throw Error(ErrorCode::kInvalidConfig, "n_games must be >= 1");
  if (parallelism < 1) throw Error(ErrorCode::kInvalidConfig, "parallelism must be >= 1");
  if (keywords_path.empty() && pairs.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no keyword file or pairs given");
  }
  if (!keywords_path.empty() && !std::filesystem::exists(keywords_path)) {
    throw Error(ErrorCode::kInvalidConfig, "keyword file not found: " + keywords_path);
  }
  const auto host_seats = static_cast<std::size_t>(game.n_players - 1);
  if (hosts.size() != 1 && hosts.size() != host_seats) {
    throw Error(ErrorCode::kInvalidConfig,
                "need 1 or " + std::to_string(host_seats) + " host specs, got " +
                    std::to_string(hosts.size()));
  }
  BackendFactory probe(remotes);
  probe.check(guest);
  for (const auto& h : hosts) probe.check(h);
  params.validate();
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  ExperimentConfig c;
  try {
    json j = json::parse(in);
    c.name = j.value("name", c.name);
    c.keywords_path = j.value("keywords", "");
    if (!c.keywords_path.empty() && std::filesystem::path(c.keywords_path).is_relative()) {
      c.keywords_path = (path.parent_path() / c.keywords_path).string();
    }
    c.n_games = j.value("games", c.n_games);
    c.game.seed = j.value("seed", c.game.seed);
    c.game.n_players = j.value("players", c.game.n_players);
    c.game.n_spies = j.value("spies", c.game.n_spies);
    c.game.guest_index = j.value("guest_index", c.game.guest_index);
    c.game.naming_method = j.value("naming_method", c.game.naming_method);
    c.game.enable_word_guessing = j.value("word_guessing", c.game.enable_word_guessing);
    c.game.enable_reasoning = j.value("reasoning", c.game.enable_reasoning);
    c.game.max_reprompts = j.value("max_reprompts", c.game.max_reprompts);
    c.game.randomize_speaking_order =
        j.value("randomize_speaking_order", c.game.randomize_speaking_order);
    c.game.randomize_option_order =
        j.value("randomize_option_order", c.game.randomize_option_order);
    c.tom_probes = j.value("tom_probes", c.tom_probes);
    c.guest = j.value("guest", c.guest);
    if (j.contains("hosts")) {
      c.hosts = j["hosts"].is_string()
                    ? std::vector<std::string>{j["hosts"].get<std::string>()}
                    : j["hosts"].get<std::vector<std::string>>();
    }
    c.parallelism = j.value("parallelism", c.parallelism);
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("backends")) {
      for (const auto& [name, spec] : j["backends"].items()) {
        c.remotes[name] = backend_spec_from_json(spec);
      }
    }
    if (j.contains("params")) {
      const auto& p = j["params"];
      c.params.temperature = p.value("temperature", c.params.temperature);
      c.params.max_tokens = p.value("max_tokens", c.params.max_tokens);
      if (p.contains("seed")) c.params.seed = p["seed"].get<std::int64_t>();
    }
    if (j.contains("retry")) {
      const auto& r = j["retry"];
      c.retry.max_attempts = r.value("max_attempts", c.retry.max_attempts);
      c.retry.base_backoff =
          std::chrono::milliseconds(r.value("base_backoff_ms", c.retry.base_backoff.count()));
      c.retry.max_backoff =
          std::chrono::milliseconds(r.value("max_backoff_ms", c.retry.max_backoff.count()));
      c.retry.jitter = r.value("jitter", c.retry.jitter);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  for (const auto& [name, spec] : c.remotes) spec.validate();
  return c;
}

std::filesystem::path log_relative_path(const std::string& experiment,
                                        std::size_t pair_index, std::size_t n_pairs,
                                        char direction, int k) {
  int width = 3;
  for (std::size_t n = n_pairs; n >= 1000; n /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, pair_index);
  return std::filesystem::path(experiment) / buf / std::string(1, direction) /
         (std::to_string(k) + ".log");
}

std::uint64_t game_seed(std::uint64_t master, std::size_t pair_index, int direction,
                        int k) {
  return derive_seed({master, static_cast<std::uint64_t>(pair_index),
                      static_cast<std::uint64_t>(direction),
                      static_cast<std::uint64_t>(k)});
}

ExperimentResult run_experiment(const ExperimentConfig& config, BackendFactory* factory) {
  config.validate();
  std::vector<KeywordPair> pairs =
      config.keywords_path.empty() ? config.pairs : load_keyword_pairs(config.keywords_path);
  if (pairs.empty()) throw Error(ErrorCode::kInvalidConfig, "keyword file has no pairs");

  std::unique_ptr<BackendFactory> owned;
  if (factory == nullptr) {
    owned = std::make_unique<BackendFactory>(config.remotes, config.params, config.retry);
    factory = owned.get();
  }

  struct Job {
    std::size_t pair;
    int direction;
    int k;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    // Even k: spies hold word_a; odd k: word_b.
    for (int k = 0; k < config.n_games; ++k) jobs.push_back({p, k % 2, k});
  }

  ExperimentResult result;
  result.logs.resize(jobs.size());
  result.files.resize(jobs.size());
  const PlayerId guest = player(config.game.guest_index);

  parallel_for(jobs.size(), config.parallelism, [&](std::size_t i) {
    const Job& job = jobs[i];
    GameConfig game = config.game;
    game.seed = game_seed(config.game.seed, job.pair, job.direction, job.k);
    game.spy_word = job.direction == 0 ? SpyWord::kWordA : SpyWord::kWordB;
    const char dir = job.direction == 0 ? 'a' : 'b';
    const auto rel = log_relative_path(config.name, job.pair, pairs.size(), dir, job.k);

    RunOptions options;
    options.game_id = rel.parent_path().string() + "/" + std::to_string(job.k);
    options.tom_probes = config.tom_probes;
    AgentProvider provider = [&](const GameSetup& setup) {
      AgentSet agents;
      int host = 0;
      for (int seat = 1; seat <= setup.config.n_players; ++seat) {
        const std::string& spec =
            player(seat) == guest
                ? config.guest
                : config.hosts[config.hosts.size() == 1 ? 0
                                                        : static_cast<std::size_t>(host++)];
        agents.push_back(factory->make(spec, setup, player(seat)));
      }
      return agents;
    };
    result.logs[i] = run_game(game, pairs[job.pair], provider, options);
    if (!config.out_dir.empty()) {
      result.files[i] = config.out_dir / rel;
      write_log(result.logs[i], result.files[i]);
    }
  });
  if (config.out_dir.empty()) result.files.clear();

  result.metrics = summarize(result.logs);
  std::map<std::string, std::vector<GameLog>> by_dir;
  for (const auto& log : result.logs) {
    if (log.complete()) by_dir[direction_of(log)].push_back(log);
  }
  for (auto& [dir, logs] : by_dir) result.by_direction[dir] = compute_metrics(logs);
  return result;
}

}  // namespace spygame
