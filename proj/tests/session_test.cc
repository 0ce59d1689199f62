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

#include <gtest/gtest.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <functional>
#include <future>
#include <set>
#include <thread>

#include "info_scan.h"
#include "session_client.h"
#include "spygame/error.h"
#include "spygame/session.h"
#include "support.h"

namespace spygame {
namespace {

using nlohmann::json;
using testing::kBertGpt;

SessionSetup basic_setup(std::uint64_t seed = 11) {
  SessionSetup s;
  s.config.seed = seed;
  s.config.spy_word = SpyWord::kWordB;
  s.pair = kBertGpt;
  s.human_seat = 2;
  s.others = {"scripted:generic+uniform"};
  s.token = "tok";
  return s;
}

using testing::ReplayClient;

struct MemoryGame {
  GameLog log;
  ReplayClient client;
};

MemoryGame play_memory(const SessionSetup& setup, int illegal_votes = 1) {
  auto [server_end, client_end] = MemoryChannel::make_pair();
  BackendFactory factory;
  auto fut = std::async(std::launch::async, [&, s = server_end] {
    return run_session(setup, s, factory);
  });
  auto c = client_end;
  ReplayClient client([c] { return c->receive(std::chrono::seconds(10)); },
                      [c](const json& m) { c->send(m); });
  client.illegal_votes = illegal_votes;
  client.run();
  return {fut.get(), client};
}

TEST(Session, GameInitCarriesOwnKeywordAndNoRoles) {
  auto g = play_memory(basic_setup());
  ASSERT_FALSE(g.client.frames.empty());
  const json& init = g.client.frames.front();
  EXPECT_EQ(init["type"], "game_init");
  EXPECT_EQ(init["your_keyword"], "BERT");
  EXPECT_EQ(init["your_name"], "Player 2");
  EXPECT_EQ(init["roster"].size(), 4u);
  EXPECT_FALSE(init["rules_text"].get<std::string>().empty());
  std::set<std::string> keys;
  for (const auto& [k, v] : init.items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"type", "seq", "your_name", "your_keyword", "roster",
                                         "rules_text"}));
}

TEST(Session, FullGameReachesOutcome) {
  auto g = play_memory(basic_setup());
  ASSERT_TRUE(g.log.complete());
  EXPECT_NE(g.log.outcome(), nullptr);
  EXPECT_EQ(g.client.of_type("game_over").size(), 1u);
  // Seq numbers are consecutive from 0.
  for (std::size_t i = 0; i < g.client.frames.size(); ++i) {
    EXPECT_EQ(g.client.frames[i]["seq"], static_cast<int>(i));
  }
  // The human's submissions became the seat's speeches.
  int human_speeches = 0;
  for (const auto& e : g.log.events) {
    if (e.type() == EventType::kSpeech && e.actor == player(2)) {
      ++human_speeches;
      EXPECT_EQ(e.as<SpeechRecord>()->text.rfind("human clue number", 0), 0u);
    }
  }
  EXPECT_EQ(human_speeches, g.client.speak_count);
  // The human seat gets no guess or reasoning events.
  for (const auto& e : g.log.events) {
    if (e.actor == player(2)) {
      EXPECT_NE(e.type(), EventType::kGuess);
      EXPECT_NE(e.type(), EventType::kReasoning);
    }
  }
  // Every speech and vote in the log was broadcast.
  int speeches = 0;
  int votes = 0;
  for (const auto& e : g.log.events) {
    speeches += e.type() == EventType::kSpeech;
    votes += e.type() == EventType::kVote;
  }
  EXPECT_EQ(static_cast<int>(g.client.of_type("speech_event").size()), speeches);
  EXPECT_EQ(static_cast<int>(g.client.of_type("vote_event").size()), votes);
}

TEST(Session, IllegalVoteIsRejectedAndReoffered) {
  auto g = play_memory(basic_setup(), 1);
  const auto& f = g.client.frames;
  std::size_t i = 0;
  while (i < f.size() && f[i]["type"] != "vote_request") ++i;
  ASSERT_LT(i + 2, f.size());
  EXPECT_EQ(f[i + 1]["type"], "error");
  EXPECT_EQ(f[i + 1]["code"], "IllegalVote");
  EXPECT_EQ(f[i + 2]["type"], "vote_request");
  EXPECT_EQ(f[i + 2]["options"], f[i]["options"]);
  for (const auto& e : g.log.events) {
    if (const auto* v = e.as<VoteRecord>(); v && e.actor == player(2)) {
      EXPECT_FALSE(v->fallback);
      EXPECT_EQ(v->choice, v->options.front());
    }
  }
}

TEST(Session, BadTokenIsRefused) {
  auto [server_end, client_end] = MemoryChannel::make_pair();
  BackendFactory factory;
  client_end->send({{"type", "join"}, {"token", "wrong"}});
  try {
    run_session(basic_setup(), server_end, factory);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClientDisconnected);
  }
  auto reply = client_end->receive(std::chrono::seconds(1));
  ASSERT_TRUE(reply);
  EXPECT_EQ((*reply)["code"], "BadToken");
}

TEST(Session, DisconnectAbortsTheGame) {
  auto [server_end, client_end] = MemoryChannel::make_pair();
  BackendFactory factory;
  SessionSetup setup = basic_setup();
  setup.human_seat = 1;
  auto fut = std::async(std::launch::async, [&, s = server_end] {
    return run_session(setup, s, factory);
  });
  client_end->send({{"type", "join"}, {"token", "tok"}});
  // Wait for the first request aimed at the human, then hang up.
  for (;;) {
    auto m = client_end->receive(std::chrono::seconds(10));
    ASSERT_TRUE(m);
    if ((*m)["type"] == "speak_request") break;
  }
  client_end->close();
  GameLog log = fut.get();
  ASSERT_FALSE(log.events.empty());
  EXPECT_EQ(log.events.back().type(), EventType::kAborted);
  EXPECT_EQ(log.outcome(), nullptr);
}

TEST(Session, SilentHumanFallsBackAfterTimeout) {
  auto [server_end, client_end] = MemoryChannel::make_pair();
  BackendFactory factory;
  SessionSetup setup = basic_setup();
  setup.turn_timeout = std::chrono::milliseconds(5);
  setup.config.max_reprompts = 0;
  client_end->send({{"type", "join"}, {"token", "tok"}});
  GameLog log = run_session(setup, server_end, factory);
  ASSERT_NE(log.outcome(), nullptr);
  for (const auto& e : log.events) {
    if (e.actor != player(2)) continue;
    if (const auto* s = e.as<SpeechRecord>()) EXPECT_EQ(s->text, kFallbackSpeech);
    if (const auto* v = e.as<VoteRecord>()) EXPECT_TRUE(v->fallback);
  }
}

TEST(Session, UnexpectedMessageGetsError) {
  auto [server_end, client_end] = MemoryChannel::make_pair();
  BackendFactory factory;
  SessionSetup setup = basic_setup();
  setup.human_seat = 1;
  auto fut = std::async(std::launch::async, [&, s = server_end] {
    return run_session(setup, s, factory);
  });
  client_end->send({{"type", "join"}, {"token", "tok"}});
  bool saw_error = false;
  bool sent_junk = false;
  for (;;) {
    auto m = client_end->receive(std::chrono::seconds(10));
    ASSERT_TRUE(m);
    const std::string type = (*m)["type"];
    if (type == "game_over") break;
    if (type == "error") saw_error = saw_error || (*m)["code"] == "UnexpectedMessage";
    if (type == "speak_request") {
      if (!sent_junk) {
        client_end->send({{"type", "vote_submit"}, {"choice", "Player 2"}});
        sent_junk = true;
      }
      client_end->send({{"type", "speak_submit"}, {"text", "a fine clue " + std::to_string((*m)["seq"].get<int>())}});
    }
    if (type == "vote_request") {
      client_end->send({{"type", "vote_submit"}, {"choice", (*m)["options"][0]}});
    }
  }
  EXPECT_TRUE(saw_error);
  EXPECT_NE(fut.get().outcome(), nullptr);
}

TEST(Session, MessagesNeverCarryHiddenFields) {
  testing::LeakCounter counter;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SessionSetup setup = basic_setup(seed);
    setup.human_seat = 1 + static_cast<int>(seed % 4);
    setup.config.spy_word = seed % 2 ? SpyWord::kWordA : SpyWord::kWordB;
    auto g = play_memory(setup, 0);
    const auto forbidden =
        testing::forbidden_for(*g.log.assignments(), player(setup.human_seat));
    for (const auto& f : g.client.frames) {
      if (f["type"] == "game_over") continue;
      std::vector<std::string> strings;
      testing::collect_strings(f, strings);
      counter.check(strings, forbidden, f.dump());
    }
  }
  EXPECT_GT(counter.scanned, 1000);
  EXPECT_EQ(counter.leaks, 0) << (counter.examples.empty() ? "" : counter.examples[0]);
}

TEST(Session, ScannerCatchesPlantedLeak) {
  testing::LeakCounter counter;
  std::vector<std::string> strings;
  testing::collect_strings(json{{"type", "phase"}, {"detail", "you are the spy"}}, strings);
  counter.check(strings, {"spy", "GPT"}, "planted");
  testing::collect_strings(json{{"roster", {"GPT fan"}}}, strings);
  counter.check(strings, {"GPT"}, "planted");
  EXPECT_EQ(counter.leaks, 2);
}

// --- websocket transport ---

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;

TEST(SessionServer, WebSocketClientCompletesGame) {
  BackendFactory factory;
  SessionServer server(0, basic_setup(21), factory);
  const auto port = server.port();
  ASSERT_NE(port, 0);
  auto fut = std::async(std::launch::async, [&] { return server.serve_one(); });

  asio::io_context ioc;
  asio::ip::tcp::socket socket(ioc);
  socket.connect({asio::ip::make_address("127.0.0.1"), port});
  websocket::stream<asio::ip::tcp::socket> ws(std::move(socket));
  ws.handshake("127.0.0.1", "/");
  ws.text(true);
  ReplayClient client(
      [&ws]() -> std::optional<json> {
        beast::flat_buffer buf;
        beast::error_code ec;
        ws.read(buf, ec);
        if (ec) return std::nullopt;
        return json::parse(beast::buffers_to_string(buf.data()));
      },
      [&ws](const json& m) { ws.write(asio::buffer(m.dump())); });
  client.run();
  // Answer the server's close frame.
  beast::flat_buffer rest;
  beast::error_code ec;
  while (!ec) ws.read(rest, ec);
  EXPECT_EQ(ec, websocket::error::closed);
  GameLog log = fut.get();

  ASSERT_NE(log.outcome(), nullptr);
  EXPECT_EQ(client.frames.front()["type"], "game_init");
  EXPECT_EQ(client.frames.back()["type"], "game_over");
  EXPECT_FALSE(client.of_type("error").empty());  // the illegal vote
  EXPECT_EQ(client.frames.back()["winner"], to_string(log.outcome()->winner));
}

TEST(SessionServer, BadTokenOverWebSocket) {
  BackendFactory factory;
  SessionServer server(0, basic_setup(), factory);
  auto fut = std::async(std::launch::async, [&] { return server.serve_one(); });
  asio::io_context ioc;
  asio::ip::tcp::socket socket(ioc);
  socket.connect({asio::ip::make_address("127.0.0.1"), server.port()});
  websocket::stream<asio::ip::tcp::socket> ws(std::move(socket));
  ws.handshake("127.0.0.1", "/");
  ws.write(asio::buffer(json{{"type", "join"}, {"token", "nope"}}.dump()));
  beast::flat_buffer buf;
  ws.read(buf);
  EXPECT_EQ(json::parse(beast::buffers_to_string(buf.data()))["code"], "BadToken");
  beast::error_code ec;
  while (!ec) ws.read(buf, ec);
  EXPECT_THROW(fut.get(), Error);
}

}  // namespace
}  // namespace spygame
