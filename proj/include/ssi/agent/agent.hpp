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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "ssi/agent/events.hpp"
#include "ssi/agent/records.hpp"
#include "ssi/agent/transport.hpp"
#include "ssi/agent/wallet.hpp"
#include "ssi/ledger/client.hpp"

namespace ssi::agent {

struct AgentOptions {
  std::string label = "agent";
  std::string host = "127.0.0.1";
  int inbound_port = 0;  // 0 = any free port
  int admin_port = 0;
  /// Public DID already on the ledger (stewards from genesis).
  std::optional<crypto::Seed> public_seed;
  /// Accept every invitation, offer and proof request without a controller.
  /// Only the bench harness turns this on.
  bool auto_accept = false;
  /// Verify presentations as they arrive; otherwise they wait in
  /// PRESENTATION_RECEIVED for verify_presentation().
  bool auto_verify = true;
  std::string webhook_url;
  std::size_t workers = 4;
  std::size_t admin_threads = 128;
  std::shared_ptr<const Clock> clock = system_clock();
  std::chrono::milliseconds wait_timeout = std::chrono::seconds(30);
};

struct CreatedInvitation {
  std::string conn_id;
  Invitation invitation;
  std::string url;
};

struct RegisteredCredDef {
  std::string cred_def_id;
  std::string rev_reg_id;  // empty when not revocable
};

struct ProofDecision {
  bool accept = true;
  std::string credential_id;              // empty: first matching credential
  std::vector<std::string> reveal_attrs;  // empty: exactly the requested ones
};

class Agent {
 public:
  Agent(AgentOptions options, std::shared_ptr<ledger::LedgerClient> ledger, WalletData wallet = {});
  ~Agent();
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  /// Binds both listeners. Throws IoError on a port conflict.
  void start();
  void stop();

  const std::string& label() const { return options_.label; }
  std::string endpoint() const { return transport_->endpoint(); }
  std::string admin_url() const { return admin_url_; }
  std::string public_did() const;
  const AgentOptions& options() const { return options_; }
  ledger::LedgerClient& ledger() { return *ledger_; }
  Wallet& wallet() { return wallet_; }
  EventBus& events() { return events_; }
  Transport& transport() { return *transport_; }
  const Clock& clock() const { return *options_.clock; }
  std::int64_t replay_window_ms() const { return window_ms_; }

  /// Extra admin routes (e.g. the authorization provider); call before start().
  void mount(const std::function<void(httplib::Server&)>& add_routes) { add_routes(admin_); }

  // connections
  CreatedInvitation create_invitation(std::optional<std::uint32_t> puzzle_difficulty = std::nullopt);
  /// With \p wait, returns once the handshake is ACTIVE or ABANDONED and
  /// throws HandshakeFailure if the echo check failed.
  ConnectionRecord receive_invitation(const std::string& url, bool accept, bool wait = true);
  ConnectionRecord connection(const std::string& conn_id) const;
  std::vector<ConnectionRecord> connections() const;
  ConnectionRecord wait_connection(const std::string& conn_id);

  /// Steward side: asks the peer for a fresh public DID and writes it as a NYM
  /// with \p role. Throws NotConnected or the ledger's error.
  ledger::Receipt enroll(const std::string& conn_id, ledger::Role role);

  // ledger writes by endorsers
  std::string register_schema(const std::string& name, const std::string& version,
                              const std::vector<std::string>& attr_names);
  RegisteredCredDef register_cred_def(const std::string& schema_id, const std::string& tag, bool supports_revocation,
                                      std::uint32_t max_cred_num = 1024);

  // issue-credential
  CredentialExchange send_offer(const std::string& conn_id, const std::string& cred_def_id,
                                const std::map<std::string, std::string>& values);
  CredentialExchange respond_offer(const std::string& cred_ex_id, bool accept);
  CredentialExchange cred_exchange(const std::string& id) const;
  std::vector<CredentialExchange> cred_exchanges() const;
  CredentialExchange wait_cred_exchange(const std::string& id);
  std::vector<StoredCredential> credentials() const;

  // present-proof
  PresentationExchange send_proof_request(const std::string& conn_id, const std::string& cred_def_id,
                                          const std::vector<std::string>& requested_attrs,
                                          std::optional<std::int64_t> non_revoked_at_time = std::nullopt);
  PresentationExchange respond_proof_request(const std::string& pres_ex_id, const ProofDecision& decision);
  /// Verifier side, for exchanges held in PRESENTATION_RECEIVED. Reads the
  /// ledger at call time.
  PresentationExchange verify_presentation(const std::string& pres_ex_id);
  PresentationExchange pres_exchange(const std::string& id) const;
  std::vector<PresentationExchange> pres_exchanges() const;
  PresentationExchange wait_pres_exchange(const std::string& id);

  // revocation
  /// Issuer side. Throws NotFound for an unknown exchange.
  CredentialExchange revoke(const std::string& cred_ex_id, bool publish = true);
  /// Holder side ledger poll; returns credential ids newly found revoked.
  std::vector<std::string> refresh_revocations();

  // wallet at rest
  Bytes export_wallet(std::string_view passphrase) const;

  // test hooks
  void set_corrupt_handshake_echo(bool on) { corrupt_echo_ = on; }

  int inflight() const { return inflight_.load(); }
  int max_inflight() const { return max_inflight_.load(); }
  void reset_max_inflight() { max_inflight_.store(inflight_.load()); }

 private:
  friend struct AdminApi;

  // dispatch
  void precheck(const InboundMessage& msg);
  void handle(const InboundMessage& msg);
  void on_connection_request(const InboundMessage& msg);
  void on_connection_response(const InboundMessage& msg, const std::string& conn_id);
  void on_connection_ack(const std::string& conn_id);
  void on_connection_problem(const InboundMessage& msg, const std::string& conn_id);
  void on_verinym_request(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_verinym(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_credential_offer(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_credential_request(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_credential_issue(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_credential_ack(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_credential_decline(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_presentation_request(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_presentation(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_presentation_ack(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_presentation_decline(const InboundMessage& msg, const ConnectionRecord& conn);
  void on_revocation_notification(const InboundMessage& msg, const ConnectionRecord& conn);

  // state changes; callers hold the wallet lock
  void move(WalletData& w, ConnectionRecord& r, ConnState to);
  void move(WalletData& w, CredentialExchange& r, CredExState to);
  void move(WalletData& w, PresentationExchange& r, PresExState to);
  void announce_new(ConnectionRecord& r);
  void announce_new(CredentialExchange& r);
  void announce_new(PresentationExchange& r);

  ConnectionRecord active_connection(const std::string& conn_id) const;
  std::optional<std::string> conn_for_key(const crypto::PublicKey& my_key) const;
  void send_to(const ConnectionRecord& conn, const Json& body);
  crypto::KeyPair public_key_pair() const;
  std::string find_cred_ex_by_thread(const std::string& thread_id, const std::string& conn_id) const;
  std::string find_pres_ex_by_thread(const std::string& thread_id, const std::string& conn_id) const;
  void fail_cred_ex(const std::string& id, const std::string& problem, bool notify_peer);
  void mark_revoked(const std::string& credential_id, const std::string& source);

  AgentOptions options_;
  std::shared_ptr<ledger::LedgerClient> ledger_;
  Wallet wallet_;
  EventBus events_;
  std::int64_t window_ms_;
  std::unique_ptr<Transport> transport_;

  httplib::Server admin_;
  std::thread admin_thread_;
  std::string admin_url_;
  std::atomic<int> inflight_{0};
  std::atomic<int> max_inflight_{0};
  std::atomic<bool> corrupt_echo_{false};
  std::atomic<bool> started_{false};

  // steward side of enrollment: thread id -> verinym reply
  std::mutex verinym_mu_;
  std::condition_variable verinym_cv_;
  std::map<std::string, std::optional<std::pair<std::string, crypto::PublicKey>>> verinyms_;
};

}  // namespace ssi::agent

namespace ssi::agent {

/// REST admin API and GET /events on the agent's admin listener.
struct AdminApi {
  static void install(Agent& agent);
};

}  // namespace ssi::agent
