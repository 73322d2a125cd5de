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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ssi/common/clock.hpp"
#include "ssi/common/json_util.hpp"

namespace ssi::agent {

struct WebhookEvent {
  std::uint64_t seq = 0;
  std::string topic;  // connections | issue_credential | present_proof | revocation
  std::string record_id;
  std::string new_state;
  std::int64_t timestamp = 0;
  Json payload;
};

Json to_json(const WebhookEvent& e);
WebhookEvent webhook_event_from_json(const Json& j);

/// Ordered event log with blocking readers. emit() never blocks on I/O; an
/// optional webhook URL is fed from a background thread.
class EventBus {
 public:
  explicit EventBus(std::shared_ptr<const Clock> clock);
  ~EventBus();
  EventBus(const EventBus&) = delete;
  EventBus& operator=(const EventBus&) = delete;

  void emit(std::string topic, std::string record_id, std::string new_state, Json payload);

  std::vector<WebhookEvent> history() const;
  std::vector<WebhookEvent> history_for(const std::string& record_id) const;
  std::uint64_t last_seq() const;

  /// Events with seq > \p after; waits up to \p timeout for the first one.
  std::vector<WebhookEvent> wait_after(std::uint64_t after, std::chrono::milliseconds timeout) const;

  /// Re-evaluates \p pred after every event until it holds or time runs out.
  /// \p pred may take other locks; none is held while it runs.
  bool wait_until(const std::function<bool()>& pred, std::chrono::milliseconds timeout) const;

  void set_webhook_url(std::string url);
  /// Wakes every waiter; later waits return immediately.
  void close();
  bool closed() const;

 private:
  void webhook_loop();

  std::shared_ptr<const Clock> clock_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::vector<WebhookEvent> events_;
  bool closed_ = false;

  std::string webhook_url_;
  std::deque<WebhookEvent> outbox_;
  std::condition_variable outbox_cv_;
  std::thread webhook_thread_;
};

}  // namespace ssi::agent
