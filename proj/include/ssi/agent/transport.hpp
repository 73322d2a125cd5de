// Copyright 2026 The ssi-desk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "ssi/common/clock.hpp"
#include "ssi/common/json_util.hpp"
#include "ssi/crypto/envelope.hpp"

namespace ssi::agent {

struct InboundMessage {
  crypto::PublicKey sender{};
  crypto::PublicKey recipient{};
  std::int64_t timestamp = 0;
  Json body;
};

/// Seen (senderKey, nonce) pairs, forgotten once their timestamp has left
/// the window.
class ReplayCache {
 public:
  /// Throws ReplayRejected for a stale timestamp or a repeated pair.
  void check_and_mark(const crypto::SealedEnvelope& env, std::int64_t now_ms, std::int64_t window_ms);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<crypto::PublicKey, crypto::Nonce>, std::int64_t> seen_;
  std::uint64_t inserts_ = 0;
};

/// HTTP POST of sealed envelopes. Inbound envelopes are authenticated and
/// replay-checked in the request handler, then queued to a worker chosen by
/// recipient key so each connection is processed in order.
class Transport {
 public:
  using KeyLookup = std::function<std::optional<crypto::KeyPair>(const crypto::PublicKey&)>;
  /// Runs in the HTTP handler; a throw is returned to the sender.
  using Precheck = std::function<void(const InboundMessage&)>;
  using Handler = std::function<void(const InboundMessage&)>;
  using Tap = std::function<void(const std::string& endpoint, const Json& envelope)>;

  Transport(std::shared_ptr<const Clock> clock, std::int64_t window_ms, KeyLookup keys, Precheck precheck,
            Handler handler, std::size_t workers = 4);
  ~Transport();

  /// Returns the bound port; 0 picks a free one. Throws IoError.
  int start(const std::string& host, int port);
  void stop();
  std::string endpoint() const { return endpoint_; }

  static constexpr int kSendAttempts = 3;
  static constexpr std::chrono::milliseconds kRetryBackoff{50};

  /// Seals and posts; remote rejections come back as typed errors,
  /// unreachable peers as TransportError after kSendAttempts tries.
  void send(const crypto::KeyPair& from, const crypto::PublicKey& to, const std::string& endpoint, const Json& body);
  /// Posts an already sealed envelope, e.g. to replay a captured one.
  static void post_envelope(const std::string& endpoint, const Json& envelope);

  void set_tap(Tap tap);
  const ReplayCache& replay_cache() const { return replay_; }
  void set_window_ms(std::int64_t w) { window_ms_ = w; }

 private:
  void accept(const httplib::Request& req, httplib::Response& res);
  void worker_loop(std::size_t index);

  std::shared_ptr<const Clock> clock_;
  std::atomic<std::int64_t> window_ms_;
  KeyLookup keys_;
  Precheck precheck_;
  Handler handler_;
  ReplayCache replay_;

  struct Queue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<InboundMessage> items;
  };
  std::vector<std::unique_ptr<Queue>> queues_;
  std::vector<std::thread> workers_;
  std::atomic<bool> stopping_{false};

  httplib::Server server_;
  std::thread server_thread_;
  std::string endpoint_;

  std::mutex tap_mu_;
  Tap tap_;
};

}  // namespace ssi::agent
