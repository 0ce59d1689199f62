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

#include "cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

#include "spygame/bias.h"
#include "spygame/deep.h"
#include "spygame/error.h"
#include "spygame/experiment.h"
#include "spygame/keywords.h"
#include "spygame/log_io.h"
#include "spygame/metrics.h"
#include "spygame/session.h"
#include "spygame/tom.h"

namespace spygame::cli {
namespace {

using nlohmann::json;

struct GameFlags {
  std::uint64_t seed = 0;
  int players = 4;
  int spies = 1;
  int naming_method = 1;
  int guest_index = 1;
  int max_reprompts = 3;
  bool no_word_guessing = false;
  bool no_reasoning = false;
  bool no_mitigation = false;
};

void add_game_flags(CLI::App& app, GameFlags& f, std::map<std::string, CLI::Option*>& opts) {
  opts["seed"] = app.add_option("--seed", f.seed, "Master seed");
  opts["players"] = app.add_option("--players", f.players, "Number of players N");
  opts["spies"] = app.add_option("--spies", f.spies, "Number of spies M");
  opts["naming"] = app.add_option("--naming-method", f.naming_method, "Naming method 1, 2 or 3");
  opts["guest"] = app.add_option("--guest-index", f.guest_index, "Seat of the guest (spy)");
  opts["reprompts"] = app.add_option("--max-reprompts", f.max_reprompts, "Re-prompts per action");
  opts["nwg"] = app.add_flag("--no-word-guessing", f.no_word_guessing, "Disable word guessing");
  opts["nr"] = app.add_flag("--no-reasoning", f.no_reasoning, "Disable reasoning");
  opts["nm"] = app.add_flag("--no-mitigation", f.no_mitigation,
                            "Keep seat order for speaking and voting options");
}

// Applies flags the user set on top of `config`.
void apply_game_flags(const GameFlags& f, const std::map<std::string, CLI::Option*>& opts,
                      GameConfig& config, bool only_explicit) {
  auto set = [&](const char* key) { return !only_explicit || opts.at(key)->count() > 0; };
  if (set("seed")) config.seed = f.seed;
  if (set("players")) config.n_players = f.players;
  if (set("spies")) config.n_spies = f.spies;
  if (set("naming")) config.naming_method = f.naming_method;
  if (set("guest")) config.guest_index = f.guest_index;
  if (set("reprompts")) config.max_reprompts = f.max_reprompts;
  if (set("nwg")) config.enable_word_guessing = !f.no_word_guessing;
  if (set("nr")) config.enable_reasoning = !f.no_reasoning;
  if (set("nm")) {
    config.randomize_speaking_order = !f.no_mitigation;
    config.randomize_option_order = !f.no_mitigation;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
}

std::map<std::string, BackendSpec> remotes_from(const std::string& config_path) {
  if (config_path.empty()) return {};
  return load_experiment_config(config_path).remotes;
}

std::string metrics_rows(const std::string& label, const std::vector<GameLog>& logs) {
  std::vector<std::pair<std::string, MetricsReport>> rows;
  rows.emplace_back(label, summarize(logs));
  std::map<std::string, std::vector<GameLog>> by_dir;
  for (const auto& log : logs) {
    if (log.complete()) by_dir[direction_of(log)].push_back(log);
  }
  for (auto& [dir, subset] : by_dir) {
    rows.emplace_back(label + " [spy word " + dir + "]", compute_metrics(subset));
  }
  return format_metrics_table(rows);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Who-is-Spy game engine and evaluation harness", "spygame"};
  app.require_subcommand(1);

  // play
  auto* play = app.add_subcommand("play", "Run seeded games over a keyword file");
  GameFlags play_game;
  std::map<std::string, CLI::Option*> play_opts;
  add_game_flags(*play, play_game, play_opts);
  std::string play_keywords, play_guest = "scripted:generic", play_out = "runs",
              play_config, play_name = "experiment", play_record;
  std::vector<std::string> play_hosts{"scripted:generic"};
  int play_games = 1, play_parallel = 1;
  bool play_probes = false;
  auto* o_keywords = play->add_option("--keywords", play_keywords, "Keyword pair file (TSV)");
  auto* o_games = play->add_option("--games", play_games, "Games per pair, alternating spy word a and b");
  auto* o_guest = play->add_option("--guest", play_guest, "Guest backend spec");
  auto* o_hosts = play->add_option("--hosts", play_hosts, "Host backend spec(s)");
  auto* o_out = play->add_option("--out", play_out, "Output directory for logs");
  auto* o_par = play->add_option("--parallelism", play_parallel, "Games in flight");
  auto* o_name = play->add_option("--experiment", play_name, "Experiment name");
  auto* o_probes = play->add_flag("--tom-probes", play_probes, "Run ToM probes in round 1");
  play->add_option("--config", play_config, "Experiment JSON file")->check(CLI::ExistingFile);
  play->add_option("--record", play_record,
                   "Save every chat-model reply as a digest script");

  // deep
  auto* deep = app.add_subcommand("deep", "DEEP describe-and-judge evaluation");
  std::string deep_words, deep_keywords, deep_model = "mock:heuristic",
              deep_judge = "mock:heuristic", deep_out, deep_config;
  int deep_parallel = 1, deep_reprompts = 3;
  deep->add_option("--words", deep_words, "DEEP word file (TSV)");
  deep->add_option("--keywords", deep_keywords, "Keyword pair file; partners become distractors");
  deep->add_option("--model", deep_model, "Describer spec (mock:... or remote:...)");
  deep->add_option("--judge", deep_judge, "Judge spec (mock:... or remote:...)");
  deep->add_option("--out", deep_out, "Write the JSON report here");
  deep->add_option("--parallelism", deep_parallel, "Items in flight");
  deep->add_option("--max-reprompts", deep_reprompts, "Judge re-prompts");
  deep->add_option("--config", deep_config, "Experiment JSON with remote backends")
      ->check(CLI::ExistingFile);

  // bias
  auto* bias = app.add_subcommand("bias", "Content-free bias audit");
  GameFlags bias_game;
  std::map<std::string, CLI::Option*> bias_opts;
  add_game_flags(*bias, bias_game, bias_opts);
  std::string bias_hosts = "scripted:dots+uniform", bias_out, bias_config, bias_logs;
  int bias_games = 240, bias_parallel = 1;
  bool bias_unbalanced = false;
  bias->add_option("--games", bias_games, "Number of content-free games");
  bias->add_option("--hosts", bias_hosts, "Backend under test, used for every seat");
  bias->add_option("--parallelism", bias_parallel, "Games in flight");
  bias->add_option("--out", bias_out, "Write the JSON report here");
  bias->add_option("--logs", bias_logs, "Also write the game logs under this directory");
  bias->add_flag("--unbalanced", bias_unbalanced,
                 "Do not rotate first-round speaking positions");
  bias->add_option("--config", bias_config, "Experiment JSON with remote backends")
      ->check(CLI::ExistingFile);

  // tom
  auto* tom = app.add_subcommand("tom", "Score Theory-of-Mind probes in logs");
  std::string tom_logs;
  bool tom_majority = false;
  tom->add_option("--logs", tom_logs, "Log directory")->required();
  tom->add_flag("--majority", tom_majority, "Score second order against the host majority");

  // report
  auto* report = app.add_subcommand("report", "Win / Round / Voted over logs");
  std::string report_logs;
  bool report_json = false;
  report->add_option("--logs", report_logs, "Log directory")->required();
  report->add_flag("--json", report_json, "Print JSON instead of a table");

  // serve
  auto* serve = app.add_subcommand("serve", "Host games for a human over websocket");
  GameFlags serve_game;
  std::map<std::string, CLI::Option*> serve_opts;
  add_game_flags(*serve, serve_game, serve_opts);
  std::string serve_keywords, serve_token, serve_out, serve_config;
  std::vector<std::string> serve_hosts{"scripted:generic"};
  int serve_port = 8765, serve_pair = 0, serve_seat = 1, serve_sessions = 1;
  long serve_timeout = 0;
  serve->add_option("--keywords", serve_keywords, "Keyword pair file")->required();
  serve->add_option("--pair", serve_pair, "Index of the pair to play");
  serve->add_option("--port", serve_port, "Listen port (0 = any)");
  serve->add_option("--hosts", serve_hosts, "Spec(s) for the other seats");
  serve->add_option("--human-seat", serve_seat, "Seat taken by the human");
  serve->add_option("--token", serve_token, "Game token the client must present");
  serve->add_option("--timeout-ms", serve_timeout, "Turn timeout, 0 = wait forever");
  serve->add_option("--sessions", serve_sessions, "Games to host, 0 = forever");
  serve->add_option("--out", serve_out, "Write session logs here");
  serve->add_option("--config", serve_config, "Experiment JSON with remote backends")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*play) {
      ExperimentConfig config;
      const bool from_file = !play_config.empty();
      if (from_file) config = load_experiment_config(play_config);
      apply_game_flags(play_game, play_opts, config.game, from_file);
      if (!from_file || o_keywords->count()) config.keywords_path = play_keywords;
      if (!from_file || o_games->count()) config.n_games = play_games;
      if (!from_file || o_guest->count()) config.guest = play_guest;
      if (!from_file || o_hosts->count()) config.hosts = play_hosts;
      if (!from_file || o_par->count()) config.parallelism = play_parallel;
      if (!from_file || o_name->count()) config.name = play_name;
      if (!from_file || o_probes->count()) config.tom_probes = play_probes;
      if (!from_file || o_out->count()) config.out_dir = play_out;
      if (config.out_dir.empty()) config.out_dir = "runs";

      BackendFactory factory(config.remotes, config.params, config.retry);
      if (!play_record.empty()) factory.enable_recording();
      ExperimentResult result = run_experiment(config, &factory);
      if (!play_record.empty()) save_digest_script(factory.recorded(), play_record);

      int aborted = 0;
      for (const auto& log : result.logs) aborted += log.aborted() ? 1 : 0;
      out << result.logs.size() << " games, " << result.files.size() << " logs under "
          << (config.out_dir / config.name).string() << "\n";
      if (aborted > 0) out << aborted << " games aborted\n";
      if (result.metrics.games > 0) {
        out << metrics_rows(config.guest, result.logs);
      }
      return aborted > 0 ? 3 : 0;
    }

    if (*deep) {
      if (deep_words.empty() == deep_keywords.empty()) {
        throw Error(ErrorCode::kInvalidConfig, "give exactly one of --words or --keywords");
      }
      auto items = deep_words.empty() ? deep_items_from_pairs(load_keyword_pairs(deep_keywords))
                                      : load_deep_items(deep_words);
      BackendFactory factory(remotes_from(deep_config));
      auto model = factory.chat_model(deep_model);
      auto judge = factory.chat_model(deep_judge);
      DeepOptions options;
      options.parallelism = deep_parallel;
      options.max_reprompts = deep_reprompts;
      DeepReport r = score_model(*model, *judge, items, options);
      r.model = deep_model;
      r.judge = deep_judge;
      out << format_deep_table({r});
      if (r.over_limit > 0) out << r.over_limit << " descriptions over their word limit\n";
      if (!deep_out.empty()) write_text(deep_out, to_json(r).dump(2) + "\n");
      return 0;
    }

    if (*bias) {
      ContentFreeBatch batch;
      apply_game_flags(bias_game, bias_opts, batch.base, false);
      batch.n_games = bias_games;
      batch.parallelism = bias_parallel;
      batch.balanced_order = !bias_unbalanced;
      BackendFactory factory(remotes_from(bias_config));
      factory.check(bias_hosts);
      AgentProvider provider = [&](const GameSetup& setup) {
        AgentSet agents;
        for (int seat = 1; seat <= setup.config.n_players; ++seat) {
          agents.push_back(factory.make(bias_hosts, setup, player(seat)));
        }
        return agents;
      };
      auto logs = run_content_free(batch, batch.base.naming_method, provider);
      if (!bias_logs.empty()) {
        for (std::size_t k = 0; k < logs.size(); ++k) {
          write_log(logs[k], std::filesystem::path(bias_logs) / (std::to_string(k) + ".log"));
        }
      }
      json j = bias_report(logs);
      j["backend"] = bias_hosts;
      j["naming_method"] = batch.base.naming_method;
      j["mitigations"] = !bias_game.no_mitigation;
      out << j.dump(2) << "\n";
      if (!bias_out.empty()) write_text(bias_out, j.dump(2) + "\n");
      return 0;
    }

    if (*tom) {
      auto logs = read_logs(tom_logs);
      auto scores = score_tom(logs, tom_majority ? SecondOrderTruth::kMajority
                                                 : SecondOrderTruth::kPerHost);
      out << format_tom_table({{tom_logs, scores}});
      return 0;
    }

    if (*report) {
      auto logs = read_logs(report_logs);
      if (logs.empty()) throw Error(ErrorCode::kEmptyLogs, "no .log files in " + report_logs);
      if (report_json) {
        out << to_json(summarize(logs)).dump(2) << "\n";
      } else {
        std::string label = "all";
        if (const auto* c = logs.front().config()) {
          label = c->backends.at(static_cast<std::size_t>(c->config.guest_index - 1));
        }
        out << metrics_rows(label, logs);
      }
      return 0;
    }

    if (*serve) {
      auto pairs = load_keyword_pairs(serve_keywords);
      if (serve_pair < 0 || serve_pair >= static_cast<int>(pairs.size())) {
        throw Error(ErrorCode::kInvalidConfig, "--pair out of range");
      }
      SessionSetup setup;
      apply_game_flags(serve_game, serve_opts, setup.config, false);
      setup.pair = pairs[static_cast<std::size_t>(serve_pair)];
      setup.human_seat = serve_seat;
      setup.others = serve_hosts;
      setup.token = serve_token;
      if (setup.token.empty()) {
        std::random_device rd;
        setup.token = std::to_string(rd()) + std::to_string(rd());
      }
      if (serve_timeout > 0) setup.turn_timeout = std::chrono::milliseconds(serve_timeout);
      BackendFactory factory(remotes_from(serve_config));
      const std::uint64_t master = setup.config.seed;
      for (int n = 0; serve_sessions == 0 || n < serve_sessions; ++n) {
        setup.config.seed = derive_seed({master, static_cast<std::uint64_t>(n)});
        SessionServer server(static_cast<std::uint16_t>(serve_port), setup, factory);
        out << "listening on ws://127.0.0.1:" << server.port() << " token " << setup.token
            << std::endl;
        try {
          GameLog log = server.serve_one();
          if (!serve_out.empty()) {
            write_log(log, std::filesystem::path(serve_out) / ("session-" + std::to_string(n) + ".log"));
          }
          out << "session " << n << ": "
              << (log.outcome() ? std::string(to_string(log.outcome()->winner)) + " win"
                                : std::string("aborted"))
              << std::endl;
        } catch (const Error& e) {
          err << "session " << n << ": " << e.what() << "\n";
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace spygame::cli
