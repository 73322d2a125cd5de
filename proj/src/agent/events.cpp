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
#include "ssi/agent/events.hpp"

#include <spdlog/spdlog.h>

#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"

namespace ssi::agent {

Json to_json(const WebhookEvent& e) {
  return {{"seq", e.seq},           {"topic", e.topic},         {"recordId", e.record_id},
          {"newState", e.new_state}, {"timestamp", e.timestamp}, {"payload", e.payload}};
}

WebhookEvent webhook_event_from_json(const Json& j) {
  return {j.at("seq").get<std::uint64_t>(),  j.at("topic").get<std::string>(),    j.at("recordId").get<std::string>(),
          j.at("newState").get<std::string>(), j.at("timestamp").get<std::int64_t>(), j.at("payload")};
}

EventBus::EventBus(std::shared_ptr<const Clock> clock) : clock_(std::move(clock)) {}

EventBus::~EventBus() {
  close();
  if (webhook_thread_.joinable()) webhook_thread_.join();
}

void EventBus::emit(std::string topic, std::string record_id, std::string new_state, Json payload) {
  {
    std::lock_guard lock(mu_);
    WebhookEvent e{events_.size() + 1, std::move(topic), std::move(record_id), std::move(new_state), clock_->now_ms(),
                   std::move(payload)};
    if (!webhook_url_.empty()) outbox_.push_back(e);
    events_.push_back(std::move(e));
  }
  cv_.notify_all();
  outbox_cv_.notify_one();
}

std::vector<WebhookEvent> EventBus::history() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::vector<WebhookEvent> EventBus::history_for(const std::string& record_id) const {
  std::lock_guard lock(mu_);
  std::vector<WebhookEvent> out;
  for (const auto& e : events_) {
    if (e.record_id == record_id) out.push_back(e);
  }
  return out;
}

std::uint64_t EventBus::last_seq() const {
  std::lock_guard lock(mu_);
  return events_.size();
}

std::vector<WebhookEvent> EventBus::wait_after(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || events_.size() > after; });
  if (events_.size() <= after) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(after), events_.end()};
}

bool EventBus::wait_until(const std::function<bool()>& pred, std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    std::size_t seen;
    {
      std::lock_guard lock(mu_);
      seen = events_.size();
    }
    if (pred()) return true;
    std::unique_lock lock(mu_);
    if (closed_) return false;
    if (!cv_.wait_until(lock, deadline, [&] { return closed_ || events_.size() != seen; })) {
      lock.unlock();
      return pred();
    }
  }
}

void EventBus::set_webhook_url(std::string url) {
  std::lock_guard lock(mu_);
  webhook_url_ = std::move(url);
  if (!webhook_url_.empty() && !webhook_thread_.joinable()) webhook_thread_ = std::thread([this] { webhook_loop(); });
}

void EventBus::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
  outbox_cv_.notify_all();
}

void EventBus::webhook_loop() {
  while (true) {
    WebhookEvent e;
    std::string url;
    {
      std::unique_lock lock(mu_);
      outbox_cv_.wait(lock, [&] { return closed_ || !outbox_.empty(); });
      if (outbox_.empty()) return;
      e = std::move(outbox_.front());
      outbox_.pop_front();
      url = webhook_url_;
    }
    try {
      const auto [base, path] = http::split_url(url);
      http::post_json(base, path + "/topic/" + e.topic + "/", to_json(e), std::chrono::seconds(5));
    } catch (const Error& err) {
      spdlog::warn("webhook delivery to {} failed: {}", url, err.what());
    }
  }
}

bool EventBus::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

}  // namespace ssi::agent
