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

#include "spygame/session.h"

#include "spygame/error.h"
#include "spygame/prompts.h"

namespace spygame {
namespace {

using nlohmann::json;

std::string feedback_text(const std::string& id) {
  if (id.empty()) return "";
  const auto& catalog = PromptCatalog::builtin();
  if (!catalog.contains(id)) return "";
  try {
    return catalog.render(id, {});
  } catch (const Error&) {
    return catalog.get(id).text;
  }
}

}  // namespace

std::pair<std::shared_ptr<MemoryChannel>, std::shared_ptr<MemoryChannel>>
MemoryChannel::make_pair() {
  auto a_to_b = std::make_shared<Queue>();
  auto b_to_a = std::make_shared<Queue>();
  std::shared_ptr<MemoryChannel> a(new MemoryChannel(b_to_a, a_to_b));
  std::shared_ptr<MemoryChannel> b(new MemoryChannel(a_to_b, b_to_a));
  return {a, b};
}

void MemoryChannel::send(const json& message) {
  std::lock_guard lock(out_->mu);
  if (out_->closed) return;
  out_->items.push_back(message);
  out_->cv.notify_all();
}

std::optional<json> MemoryChannel::receive(std::optional<std::chrono::milliseconds> timeout) {
  std::unique_lock lock(in_->mu);
  auto ready = [&] { return !in_->items.empty() || in_->closed; };
  if (timeout) {
    if (!in_->cv.wait_for(lock, *timeout, ready)) return std::nullopt;
  } else {
    in_->cv.wait(lock, ready);
  }
  if (in_->items.empty()) throw Error(ErrorCode::kClientDisconnected, "peer closed");
  json message = std::move(in_->items.front());
  in_->items.pop_front();
  return message;
}

void MemoryChannel::close() {
  for (auto* q : {in_.get(), out_.get()}) {
    std::lock_guard lock(q->mu);
    q->closed = true;
    q->cv.notify_all();
  }
}

std::string rules_text() {
  return "Every player has a secret keyword. Most players share one keyword; a few "
         "players, the spies, hold a different but related one. Nobody is told which "
         "group they are in. Each round, every player describes their keyword in one "
         "sentence without saying it or repeating an earlier description, then everyone "
         "votes for the player they suspect. The player with the most votes is out. The "
         "spies win if they are never outnumbered; the others win once every spy is out.";
}

HumanBackend::HumanBackend(std::shared_ptr<SessionChannel> channel,
                           std::optional<std::chrono::milliseconds> timeout)
    : channel_(std::move(channel)), timeout_(timeout) {}

const std::string& HumanBackend::name(PlayerId p) const {
  return roster_.at(static_cast<std::size_t>(index_of(p) - 1));
}

void HumanBackend::send(json message) {
  message["seq"] = seq_++;
  if (observer_) observer_(message);
  channel_->send(message);
}

std::optional<json> HumanBackend::await(const std::string& type) {
  for (;;) {
    auto message = channel_->receive(timeout_);
    if (!message) return std::nullopt;
    if (message->is_object() && message->value("type", "") == type) return message;
    send({{"type", "error"},
          {"code", "UnexpectedMessage"},
          {"detail", "expected " + type}});
  }
}

void HumanBackend::on_game_start(const AgentContext& ctx) {
  roster_ = ctx.roster;
  send({{"type", "game_init"},
        {"your_name", ctx.self_name},
        {"your_keyword", ctx.own_keyword},
        {"roster", ctx.roster},
        {"rules_text", rules_text()}});
}

void HumanBackend::on_phase(int round, Phase phase) {
  send({{"type", "phase"}, {"round", round}, {"kind", to_string(phase)}});
}

void HumanBackend::on_public_event(const HistoryEntry& entry) {
  switch (entry.kind) {
    case HistoryEntry::Kind::kSpeech:
      send({{"type", "speech_event"},
            {"round", entry.round},
            {"player", name(entry.actor)},
            {"text", entry.text}});
      break;
    case HistoryEntry::Kind::kVote:
      send({{"type", "vote_event"},
            {"round", entry.round},
            {"voter", name(entry.actor)},
            {"choice", name(entry.target.value_or(entry.actor))}});
      break;
    case HistoryEntry::Kind::kElimination: {
      json tally = json::object();
      for (const auto& [p, n] : entry.tally) tally[name(p)] = n;
      send({{"type", "elimination"},
            {"round", entry.round},
            {"player", name(entry.actor)},
            {"tally", std::move(tally)}});
      break;
    }
  }
}

void HumanBackend::on_game_over(const OutcomeRecord& outcome) {
  send({{"type", "game_over"},
        {"winner", to_string(outcome.winner)},
        {"rounds", outcome.rounds_played}});
}

void HumanBackend::on_game_aborted(const std::string& reason) {
  send({{"type", "error"}, {"code", "Aborted"}, {"detail", reason}});
}

std::optional<std::string> HumanBackend::respond(const AgentContext& ctx,
                                                 const AgentRequest& request) {
  if (request.action == Action::kSpeak) {
    send({{"type", "speak_request"},
          {"round", ctx.round},
          {"constraints",
           {{"keyword_forbidden", true},
            {"must_be_unique", true},
            {"attempt", request.attempt},
            {"feedback", feedback_text(request.feedback_id)}}}});
    auto reply = await("speak_submit");
    if (!reply) return std::nullopt;
    return reply->value("text", "");
  }
  if (request.action == Action::kVote) {
    std::vector<std::string> options;
    for (PlayerId p : request.options) options.push_back(name(p));
    for (;;) {
      send({{"type", "vote_request"}, {"round", ctx.round}, {"options", options}});
      auto reply = await("vote_submit");
      if (!reply) return std::nullopt;
      const std::string choice = reply->value("choice", "");
      for (const auto& o : options) {
        if (o == choice) return choice;
      }
      send({{"type", "error"},
            {"code", "IllegalVote"},
            {"detail", "'" + choice + "' is not one of the offered options"}});
    }
  }
  return std::nullopt;
}

GameLog run_session(const SessionSetup& setup, std::shared_ptr<SessionChannel> channel,
                    BackendFactory& factory, const HumanBackend::Observer& observer) {
  const std::size_t other_seats = static_cast<std::size_t>(setup.config.n_players - 1);
  if (setup.others.size() != 1 && setup.others.size() != other_seats) {
    throw Error(ErrorCode::kInvalidConfig, "need 1 or N-1 specs for the other seats");
  }
  if (setup.human_seat < 1 || setup.human_seat > setup.config.n_players) {
    throw Error(ErrorCode::kInvalidConfig, "human seat out of range");
  }

  auto join = channel->receive(std::nullopt);
  if (!join || join->value("type", "") != "join" ||
      join->value("token", "") != setup.token) {
    channel->send({{"type", "error"}, {"seq", 0}, {"code", "BadToken"},
                   {"detail", "first message must be a join with the game token"}});
    channel->close();
    throw Error(ErrorCode::kClientDisconnected, "join rejected");
  }

  AgentProvider provider = [&](const GameSetup& game) {
    AgentSet agents;
    std::size_t other = 0;
    for (int seat = 1; seat <= game.config.n_players; ++seat) {
      if (seat == setup.human_seat) {
        auto human = std::make_unique<HumanBackend>(channel, setup.turn_timeout);
        if (observer) human->set_observer(observer);
        agents.push_back(std::move(human));
      } else {
        const auto& spec = setup.others[setup.others.size() == 1 ? 0 : other++];
        agents.push_back(factory.make(spec, game, player(seat)));
      }
    }
    return agents;
  };
  RunOptions options;
  options.game_id = "session";
  options.tom_probes = setup.tom_probes;
  options.inspector = setup.inspector;
  GameLog log = run_game(setup.config, setup.pair, provider, options);
  channel->close();
  return log;
}

}  // namespace spygame
