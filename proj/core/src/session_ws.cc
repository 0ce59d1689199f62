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

// Websocket transport for the session protocol.

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <future>
#include <thread>

#include "spygame/error.h"
#include "spygame/session.h"

namespace spygame {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

tcp::socket rebind(asio::io_context& ioc, tcp::socket& socket) {
  const auto protocol = socket.local_endpoint().protocol();
  return tcp::socket(ioc, protocol, socket.release());
}

// All socket work runs on one io thread; callers hand work over with post.
class WebSocketChannel : public SessionChannel {
 public:
  // The socket is moved onto this channel's own io_context.
  explicit WebSocketChannel(tcp::socket socket)
      : guard_(asio::make_work_guard(ioc_)),
        ws_(rebind(ioc_, socket)) {}

  ~WebSocketChannel() override {
    close();
    guard_.reset();
    ioc_.stop();
    if (io_.joinable()) io_.join();
  }

  // Completes the handshake on the calling thread, then starts reading.
  void start() {
    ws_.accept();
    ws_.text(true);
    io_ = std::thread([this] { ioc_.run(); });
    asio::post(ioc_, [this] { read_next(); });
  }

  void send(const json& message) override {
    auto done = std::make_shared<std::promise<void>>();
    auto result = done->get_future();
    asio::post(ioc_, [this, text = message.dump(), done]() mutable {
      if (closed_) {
        done->set_value();
        return;
      }
      outbox_.emplace_back(std::move(text), std::move(done));
      if (outbox_.size() == 1) write_next();
    });
    result.wait();
  }

  std::optional<json> receive(std::optional<std::chrono::milliseconds> timeout) override {
    std::unique_lock lock(mu_);
    auto ready = [&] { return !inbox_.empty() || peer_gone_; };
    if (timeout) {
      if (!cv_.wait_for(lock, *timeout, ready)) return std::nullopt;
    } else {
      cv_.wait(lock, ready);
    }
    if (inbox_.empty()) throw Error(ErrorCode::kClientDisconnected, "websocket closed");
    json message = std::move(inbox_.front());
    inbox_.pop_front();
    return message;
  }

  void close() override {
    if (!io_.joinable()) return;
    std::promise<void> done;
    auto result = done.get_future();
    asio::post(ioc_, [this, &done] {
      if (closed_ || !ws_.is_open()) {
        closed_ = true;
        done.set_value();
        return;
      }
      closed_ = true;
      ws_.async_close(websocket::close_code::normal,
                      [&done](beast::error_code) { done.set_value(); });
    });
    result.wait_for(std::chrono::seconds(5));
  }

 private:
  void read_next() {
    ws_.async_read(buffer_, [this](beast::error_code ec, std::size_t) {
      std::lock_guard lock(mu_);
      if (ec) {
        peer_gone_ = true;
        cv_.notify_all();
        return;
      }
      const std::string text = beast::buffers_to_string(buffer_.data());
      buffer_.consume(buffer_.size());
      json message = json::parse(text, nullptr, false);
      if (message.is_discarded()) {
        message = json{{"type", "malformed"}};
      }
      inbox_.push_back(std::move(message));
      cv_.notify_all();
      asio::post(ioc_, [this] { read_next(); });
    });
  }

  void write_next() {
    ws_.async_write(asio::buffer(outbox_.front().first),
                    [this](beast::error_code ec, std::size_t) {
                      outbox_.front().second->set_value();
                      outbox_.pop_front();
                      if (ec) {
                        closed_ = true;
                        for (auto& [text, done] : outbox_) done->set_value();
                        outbox_.clear();
                        return;
                      }
                      if (!outbox_.empty()) write_next();
                    });
  }

  asio::io_context ioc_;
  asio::executor_work_guard<asio::io_context::executor_type> guard_;
  websocket::stream<tcp::socket> ws_;
  std::thread io_;
  beast::flat_buffer buffer_;
  std::deque<std::pair<std::string, std::shared_ptr<std::promise<void>>>> outbox_;
  bool closed_ = false;  // io thread only

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<json> inbox_;
  bool peer_gone_ = false;
};

}  // namespace

struct SessionServer::Impl {
  Impl(std::uint16_t port, SessionSetup s, BackendFactory& f)
      : acceptor(ioc, tcp::endpoint(asio::ip::make_address("127.0.0.1"), port)),
        setup(std::move(s)),
        factory(f) {}

  asio::io_context ioc;
  tcp::acceptor acceptor;
  SessionSetup setup;
  BackendFactory& factory;
};

SessionServer::SessionServer(std::uint16_t port, SessionSetup setup,
                             BackendFactory& factory) {
  try {
    impl_ = std::make_unique<Impl>(port, std::move(setup), factory);
  } catch (const boost::system::system_error& e) {
    throw Error(ErrorCode::kIoError, std::string("cannot listen: ") + e.what());
  }
}

SessionServer::~SessionServer() = default;

std::uint16_t SessionServer::port() const {
  return impl_->acceptor.local_endpoint().port();
}

GameLog SessionServer::serve_one() {
  tcp::socket socket(impl_->ioc);
  impl_->acceptor.accept(socket);
  auto channel = std::make_shared<WebSocketChannel>(std::move(socket));
  try {
    channel->start();
  } catch (const boost::system::system_error& e) {
    throw Error(ErrorCode::kClientDisconnected, std::string("handshake: ") + e.what());
  }
  return run_session(impl_->setup, channel, impl_->factory);
}

}  // namespace spygame
