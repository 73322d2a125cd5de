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
#include "ssi/agent/transport.hpp"

#include <spdlog/spdlog.h>

#include <thread>

#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"

namespace ssi::agent {

void ReplayCache::check_and_mark(const crypto::SealedEnvelope& env, std::int64_t now_ms, std::int64_t window_ms) {
  if (env.timestamp_ms > now_ms + window_ms || env.timestamp_ms < now_ms - window_ms) {
    throw Error(ErrorCode::ReplayRejected, "envelope timestamp outside the replay window");
  }
  std::lock_guard lock(mu_);
  if (!seen_.emplace(std::make_pair(env.sender_key, env.nonce), env.timestamp_ms).second) {
    throw Error(ErrorCode::ReplayRejected, "envelope nonce already seen from this sender");
  }
  if (++inserts_ % 1024 == 0) {
    std::erase_if(seen_, [&](const auto& kv) { return kv.second < now_ms - window_ms; });
  }
}

std::size_t ReplayCache::size() const {
  std::lock_guard lock(mu_);
  return seen_.size();
}

Transport::Transport(std::shared_ptr<const Clock> clock, std::int64_t window_ms, KeyLookup keys, Precheck precheck,
                     Handler handler, std::size_t workers)
    : clock_(std::move(clock)),
      window_ms_(window_ms),
      keys_(std::move(keys)),
      precheck_(std::move(precheck)),
      handler_(std::move(handler)) {
  for (std::size_t i = 0; i < std::max<std::size_t>(workers, 1); ++i) queues_.push_back(std::make_unique<Queue>());
  server_.Post("/didcomm", [this](const httplib::Request& req, httplib::Response& res) { accept(req, res); });
}

Transport::~Transport() { stop(); }

int Transport::start(const std::string& host, int port) {
  http::exclusive_port(server_);
  const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind inbound transport to " + host + ":" + std::to_string(port));
  endpoint_ = "http://" + host + ":" + std::to_string(bound) + "/didcomm";
  for (std::size_t i = 0; i < queues_.size(); ++i) workers_.emplace_back([this, i] { worker_loop(i); });
  server_thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
  return bound;
}

void Transport::stop() {
  if (stopping_.exchange(true)) return;
  server_.stop();
  if (server_thread_.joinable()) server_thread_.join();
  for (auto& q : queues_) {
    std::lock_guard lock(q->mu);
    q->cv.notify_all();
  }
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
}

void Transport::accept(const httplib::Request& req, httplib::Response& res) {
  try {
    crypto::SealedEnvelope env;
    try {
      env = crypto::envelope_from_json(Json::parse(req.body));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::Malformed, std::string("envelope: ") + e.what());
    }
    const auto keys = keys_(env.recipient_key);
    if (!keys) throw Error(ErrorCode::AuthenticationFailure, "no key for recipient");
    const auto plain = crypto::open(*keys, env);
    // Only authenticated envelopes enter the cache, so forgeries cannot
    // poison it.
    replay_.check_and_mark(env, clock_->now_ms(), window_ms_.load());
    InboundMessage msg{env.sender_key, env.recipient_key, env.timestamp_ms, {}};
    try {
      msg.body = Json::parse(plain.begin(), plain.end());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::Malformed, std::string("message: ") + e.what());
    }
    if (precheck_) precheck_(msg);
    auto& q = *queues_[std::hash<std::string_view>{}(
                           std::string_view(reinterpret_cast<const char*>(env.recipient_key.data()), 32)) %
                       queues_.size()];
    {
      std::lock_guard lock(q.mu);
      q.items.push_back(std::move(msg));
    }
    q.cv.notify_one();
    http::send_json(res, {{"status", "accepted"}}, 202);
  } catch (const Error& e) {
    http::send_error(res, e);
  }
}

void Transport::worker_loop(std::size_t index) {
  auto& q = *queues_[index];
  while (true) {
    InboundMessage msg;
    {
      std::unique_lock lock(q.mu);
      q.cv.wait(lock, [&] { return stopping_ || !q.items.empty(); });
      if (stopping_) return;
      msg = std::move(q.items.front());
      q.items.pop_front();
    }
    try {
      handler_(msg);
    } catch (const std::exception& e) {
      spdlog::warn("inbound {} dropped: {}", msg.body.value("@type", std::string("?")), e.what());
    }
  }
}

void Transport::send(const crypto::KeyPair& from, const crypto::PublicKey& to, const std::string& endpoint,
                     const Json& body) {
  for (int attempt = 1;; ++attempt) {
    // resealed each time: a fresh nonce, so a retry is not a replay
    const auto env = crypto::to_json(crypto::seal(from, to, as_bytes(body.dump()), clock_->now_ms()));
    {
      std::lock_guard lock(tap_mu_);
      if (tap_) tap_(endpoint, env);
    }
    try {
      post_envelope(endpoint, env);
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TransportError || attempt >= kSendAttempts) throw;
      spdlog::debug("retrying {} to {}: {}", body.value("@type", std::string("?")), endpoint, e.what());
      std::this_thread::sleep_for(kRetryBackoff * attempt);
    }
  }
}

void Transport::post_envelope(const std::string& endpoint, const Json& envelope) {
  const auto [base, path] = http::split_url(endpoint);
  http::post_json(base, path, envelope, std::chrono::seconds(10));
}

void Transport::set_tap(Tap tap) {
  std::lock_guard lock(tap_mu_);
  tap_ = std::move(tap);
}

}  // namespace ssi::agent
