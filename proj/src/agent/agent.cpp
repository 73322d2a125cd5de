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
#include "ssi/agent/agent.hpp"

#include <spdlog/spdlog.h>

#include "ssi/common/error.hpp"
#include "ssi/common/http.hpp"

namespace ssi::agent {

namespace {

std::int64_t window_from_ledger(ledger::LedgerClient& l) {
  try {
    return ledger::replay_window_ms(l);
  } catch (const Error& e) {
    spdlog::warn("replay window not readable from ledger ({}), using {} ms", e.what(), ledger::kDefaultReplayWindowMs);
    return ledger::kDefaultReplayWindowMs;
  }
}

template <typename Rec>
Json event_payload(const Rec& r) {
  auto j = to_json(r);
  j.erase("history");
  return j;
}

}  // namespace

Agent::Agent(AgentOptions options, std::shared_ptr<ledger::LedgerClient> ledger, WalletData wallet)
    : options_(std::move(options)),
      ledger_(std::move(ledger)),
      wallet_(std::move(wallet)),
      events_(options_.clock),
      window_ms_(window_from_ledger(*ledger_)) {
  wallet_.with([&](WalletData& w) {
    if (w.label.empty()) w.label = options_.label;
    if (options_.public_seed) w.public_did = crypto::did_from_key(w.new_key(ByteView(*options_.public_seed)).public_key);
  });
  transport_ = std::make_unique<Transport>(
      options_.clock, window_ms_,
      [this](const crypto::PublicKey& pk) -> std::optional<crypto::KeyPair> {
        return wallet_.with([&](const WalletData& w) -> std::optional<crypto::KeyPair> {
          auto it = w.keys.find(crypto::did_from_key(pk));
          if (it == w.keys.end() || it->second.public_key != pk) return std::nullopt;
          return it->second;
        });
      },
      [this](const InboundMessage& m) { precheck(m); }, [this](const InboundMessage& m) { handle(m); },
      options_.workers);
  if (!options_.webhook_url.empty()) events_.set_webhook_url(options_.webhook_url);
}

Agent::~Agent() { stop(); }

void Agent::start() {
  if (started_.exchange(true)) return;
  transport_->start(options_.host, options_.inbound_port);
  const auto threads = options_.admin_threads;
  admin_.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  AdminApi::install(*this);
  http::exclusive_port(admin_);
  const int port = options_.admin_port == 0
                       ? admin_.bind_to_any_port(options_.host)
                       : (admin_.bind_to_port(options_.host, options_.admin_port) ? options_.admin_port : -1);
  if (port < 0) {
    transport_->stop();
    started_ = false;
    throw Error(ErrorCode::IoError, "cannot bind admin API to " + options_.host + ":" + std::to_string(options_.admin_port));
  }
  admin_url_ = "http://" + options_.host + ":" + std::to_string(port);
  admin_thread_ = std::thread([this] { admin_.listen_after_bind(); });
  admin_.wait_until_ready();
}

void Agent::stop() {
  events_.close();
  {
    std::lock_guard lock(verinym_mu_);
    verinym_cv_.notify_all();
  }
  admin_.stop();
  if (admin_thread_.joinable()) admin_thread_.join();
  if (transport_) transport_->stop();
}

std::string Agent::public_did() const {
  return wallet_.with([](const WalletData& w) { return w.public_did; });
}

crypto::KeyPair Agent::public_key_pair() const {
  return wallet_.with([](const WalletData& w) {
    if (w.public_did.empty()) throw Error(ErrorCode::Unauthorized, "agent has no public DID");
    return w.keys.at(w.public_did);
  });
}

Bytes Agent::export_wallet(std::string_view passphrase) const { return agent::export_wallet(wallet_.snapshot(), passphrase); }

void Agent::announce_new(ConnectionRecord& r) {
  r.history = {std::string(to_string(r.state))};
  events_.emit("connections", r.conn_id, r.history.back(), event_payload(r));
}
void Agent::announce_new(CredentialExchange& r) {
  r.history = {std::string(to_string(r.state))};
  events_.emit("issue_credential", r.cred_ex_id, r.history.back(), event_payload(r));
}
void Agent::announce_new(PresentationExchange& r) {
  r.history = {std::string(to_string(r.state))};
  events_.emit("present_proof", r.pres_ex_id, r.history.back(), event_payload(r));
}

void Agent::move(WalletData&, ConnectionRecord& r, ConnState to) {
  if (!transition_allowed(r.role, r.state, to)) {
    throw Error(ErrorCode::InvalidState, "connection " + r.conn_id + " cannot go " + std::string(to_string(r.state)) +
                                             " -> " + std::string(to_string(to)));
  }
  r.state = to;
  r.history.emplace_back(to_string(to));
  events_.emit("connections", r.conn_id, r.history.back(), event_payload(r));
}

void Agent::move(WalletData&, CredentialExchange& r, CredExState to) {
  if (!transition_allowed(r.role, r.state, to)) {
    throw Error(ErrorCode::InvalidState, "credential exchange " + r.cred_ex_id + " cannot go " +
                                             std::string(to_string(r.state)) + " -> " + std::string(to_string(to)));
  }
  r.state = to;
  r.history.emplace_back(to_string(to));
  events_.emit("issue_credential", r.cred_ex_id, r.history.back(), event_payload(r));
}

void Agent::move(WalletData&, PresentationExchange& r, PresExState to) {
  if (!transition_allowed(r.role, r.state, to)) {
    throw Error(ErrorCode::InvalidState, "presentation exchange " + r.pres_ex_id + " cannot go " +
                                             std::string(to_string(r.state)) + " -> " + std::string(to_string(to)));
  }
  r.state = to;
  r.history.emplace_back(to_string(to));
  events_.emit("present_proof", r.pres_ex_id, r.history.back(), event_payload(r));
}

std::optional<std::string> Agent::conn_for_key(const crypto::PublicKey& my_key) const {
  return wallet_.with([&](const WalletData& w) -> std::optional<std::string> {
    for (const auto& [id, c] : w.connections) {
      if (c.my_key == my_key && !c.my_did.empty()) return id;
    }
    return std::nullopt;
  });
}

ConnectionRecord Agent::active_connection(const std::string& conn_id) const {
  return wallet_.with([&](const WalletData& w) {
    auto it = w.connections.find(conn_id);
    if (it == w.connections.end()) throw Error(ErrorCode::NotFound, "connection " + conn_id);
    if (it->second.state != ConnState::Active) {
      throw Error(ErrorCode::NotConnected, "connection " + conn_id + " is " + std::string(to_string(it->second.state)));
    }
    return it->second;
  });
}

void Agent::send_to(const ConnectionRecord& conn, const Json& body) {
  const auto keys = wallet_.with([&](const WalletData& w) { return w.key_for(conn.my_key); });
  transport_->send(keys, conn.their_key, conn.their_endpoint, body);
}

void Agent::precheck(const InboundMessage& msg) {
  if (msg.body.value("@type", std::string{}) == "connection_request") {
    on_connection_request(msg);
  }
}

void Agent::handle(const InboundMessage& msg) {
  const auto type = msg.body.value("@type", std::string{});
  if (type == "connection_request") {
    // state was settled in precheck; now answer it
    const auto id = wallet_.with([&](const WalletData& w) -> std::string {
      for (const auto& [cid, c] : w.connections) {
        if (c.role == ExchangeRole::Initiator && c.invitation_key == msg.recipient && c.their_key == msg.sender) return cid;
      }
      return {};
    });
    if (id.empty()) return;
    auto conn = wallet_.with([&](WalletData& w) {
      auto& c = w.connections.at(id);
      c.my_key = w.new_key().public_key;
      c.my_did = crypto::did_from_key(c.my_key);
      move(w, c, ConnState::Responded);
      return c;
    });
    Json echo = msg.body.at("challenge");
    if (corrupt_echo_) {
      auto bytes = json_bytes(echo);
      bytes[0] ^= 0xff;
      echo = bytes_json(bytes);
    }
    try {
      send_to(conn, {{"@type", "connection_response"}, {"did", conn.my_did}, {"label", options_.label}, {"echo", echo}});
    } catch (const Error& e) {
      wallet_.with([&](WalletData& w) {
        auto& c = w.connections.at(id);
        c.problem = e.what();
        move(w, c, ConnState::Abandoned);
      });
    }
    return;
  }

  const auto conn_id = conn_for_key(msg.recipient);
  if (!conn_id) {
    spdlog::warn("{}: {} for unknown key dropped", options_.label, type);
    return;
  }
  if (type == "connection_response") return on_connection_response(msg, *conn_id);
  const auto conn = connection(*conn_id);
  if (conn.their_key != msg.sender) {
    spdlog::warn("{}: {} from unexpected sender dropped", options_.label, type);
    return;
  }
  if (type == "connection_ack") return on_connection_ack(*conn_id);
  if (type == "connection_problem") return on_connection_problem(msg, *conn_id);
  if (conn.state != ConnState::Active) {
    spdlog::warn("{}: {} on inactive connection dropped", options_.label, type);
    return;
  }
  if (type == "verinym_request") return on_verinym_request(msg, conn);
  if (type == "verinym") return on_verinym(msg, conn);
  if (type == "verinym_ack") return;
  if (type == "credential_offer") return on_credential_offer(msg, conn);
  if (type == "credential_request") return on_credential_request(msg, conn);
  if (type == "credential_issue") return on_credential_issue(msg, conn);
  if (type == "credential_ack") return on_credential_ack(msg, conn);
  if (type == "credential_decline") return on_credential_decline(msg, conn);
  if (type == "presentation_request") return on_presentation_request(msg, conn);
  if (type == "presentation") return on_presentation(msg, conn);
  if (type == "presentation_ack") return on_presentation_ack(msg, conn);
  if (type == "presentation_decline") return on_presentation_decline(msg, conn);
  if (type == "revocation_notification") return on_revocation_notification(msg, conn);
  spdlog::warn("{}: unknown message type {}", options_.label, type);
}

ConnectionRecord Agent::connection(const std::string& conn_id) const {
  return wallet_.with([&](const WalletData& w) {
    auto it = w.connections.find(conn_id);
    if (it == w.connections.end()) throw Error(ErrorCode::NotFound, "connection " + conn_id);
    return it->second;
  });
}

std::vector<ConnectionRecord> Agent::connections() const {
  return wallet_.with([](const WalletData& w) {
    std::vector<ConnectionRecord> out;
    for (const auto& [id, c] : w.connections) out.push_back(c);
    return out;
  });
}

CredentialExchange Agent::cred_exchange(const std::string& id) const {
  return wallet_.with([&](const WalletData& w) {
    auto it = w.cred_exchanges.find(id);
    if (it == w.cred_exchanges.end()) throw Error(ErrorCode::NotFound, "credential exchange " + id);
    return it->second;
  });
}

std::vector<CredentialExchange> Agent::cred_exchanges() const {
  return wallet_.with([](const WalletData& w) {
    std::vector<CredentialExchange> out;
    for (const auto& [id, c] : w.cred_exchanges) out.push_back(c);
    return out;
  });
}

PresentationExchange Agent::pres_exchange(const std::string& id) const {
  return wallet_.with([&](const WalletData& w) {
    auto it = w.pres_exchanges.find(id);
    if (it == w.pres_exchanges.end()) throw Error(ErrorCode::NotFound, "presentation exchange " + id);
    return it->second;
  });
}

std::vector<PresentationExchange> Agent::pres_exchanges() const {
  return wallet_.with([](const WalletData& w) {
    std::vector<PresentationExchange> out;
    for (const auto& [id, c] : w.pres_exchanges) out.push_back(c);
    return out;
  });
}

std::vector<StoredCredential> Agent::credentials() const {
  return wallet_.with([](const WalletData& w) {
    std::vector<StoredCredential> out;
    for (const auto& [id, c] : w.credentials) out.push_back(c);
    return out;
  });
}

namespace {

template <typename Get>
auto wait_terminal(const EventBus& events, std::chrono::milliseconds timeout, Get&& get, const std::string& what) {
  if (!events.wait_until([&] { return is_terminal(get().state); }, timeout)) {
    throw Error(ErrorCode::Timeout, what + " did not settle");
  }
  return get();
}

}  // namespace

ConnectionRecord Agent::wait_connection(const std::string& id) {
  return wait_terminal(events_, options_.wait_timeout, [&] { return connection(id); }, "connection " + id);
}

CredentialExchange Agent::wait_cred_exchange(const std::string& id) {
  return wait_terminal(events_, options_.wait_timeout, [&] { return cred_exchange(id); }, "credential exchange " + id);
}

PresentationExchange Agent::wait_pres_exchange(const std::string& id) {
  return wait_terminal(events_, options_.wait_timeout, [&] { return pres_exchange(id); }, "presentation exchange " + id);
}

std::string Agent::find_cred_ex_by_thread(const std::string& thread_id, const std::string& conn_id) const {
  return wallet_.with([&](const WalletData& w) {
    for (const auto& [id, r] : w.cred_exchanges) {
      if (r.thread_id == thread_id && r.conn_id == conn_id) return id;
    }
    throw Error(ErrorCode::NotFound, "no credential exchange on thread " + thread_id);
  });
}

std::string Agent::find_pres_ex_by_thread(const std::string& thread_id, const std::string& conn_id) const {
  return wallet_.with([&](const WalletData& w) {
    for (const auto& [id, r] : w.pres_exchanges) {
      if (r.thread_id == thread_id && r.conn_id == conn_id) return id;
    }
    throw Error(ErrorCode::NotFound, "no presentation exchange on thread " + thread_id);
  });
}

}  // namespace ssi::agent
