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
#include <sodium.h>

#include <spdlog/spdlog.h>

#include "ssi/agent/agent.hpp"
#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"

namespace ssi::agent {

CreatedInvitation Agent::create_invitation(std::optional<std::uint32_t> puzzle_difficulty) {
  if (puzzle_difficulty && *puzzle_difficulty > 24) {
    throw Error(ErrorCode::InvalidArgument, "puzzle difficulty above 24 bits");
  }
  CreatedInvitation out;
  out.invitation.label = options_.label;
  out.invitation.service_endpoint = endpoint();
  out.invitation.nonce = crypto::random_nonce();
  if (puzzle_difficulty && *puzzle_difficulty > 0) {
    Puzzle p{*puzzle_difficulty, {}};
    randombytes_buf(p.challenge.data(), p.challenge.size());
    out.invitation.puzzle = p;
  }
  wallet_.with([&](WalletData& w) {
    out.invitation.recipient_key = w.new_key().public_key;
    ConnectionRecord r;
    r.conn_id = new_uuid();
    r.role = ExchangeRole::Initiator;
    r.state = ConnState::Invited;
    r.invitation_key = out.invitation.recipient_key;
    r.invitation_nonce = out.invitation.nonce;
    r.puzzle = out.invitation.puzzle;
    announce_new(r);
    out.conn_id = r.conn_id;
    w.connections.emplace(r.conn_id, std::move(r));
  });
  out.url = invitation_url(out.invitation);
  return out;
}

ConnectionRecord Agent::receive_invitation(const std::string& url, bool accept, bool wait) {
  const auto inv = parse_invitation_url(url);
  const auto conn = wallet_.with([&](WalletData& w) {
    ConnectionRecord r;
    r.conn_id = new_uuid();
    r.role = ExchangeRole::Responder;
    r.state = ConnState::Invited;
    r.their_label = inv.label;
    r.their_endpoint = inv.service_endpoint;
    r.invitation_key = inv.recipient_key;
    r.invitation_nonce = inv.nonce;
    r.puzzle = inv.puzzle;
    announce_new(r);
    if (!accept) {
      move(w, r, ConnState::Abandoned);
    } else {
      r.my_key = w.new_key().public_key;
      r.my_did = crypto::did_from_key(r.my_key);
      r.challenge = crypto::random_nonce();
      move(w, r, ConnState::Requested);
    }
    w.connections.emplace(r.conn_id, r);
    return r;
  });
  if (!accept) return conn;

  Json request = {{"@type", "connection_request"},
                  {"label", options_.label},
                  {"did", conn.my_did},
                  {"endpoint", endpoint()},
                  {"invitationNonce", bytes_json(inv.nonce)},
                  {"challenge", bytes_json(conn.challenge)}};
  if (inv.puzzle) request["puzzleSolution"] = solve_puzzle(*inv.puzzle, conn.my_key);
  try {
    const auto keys = wallet_.with([&](const WalletData& w) { return w.key_for(conn.my_key); });
    transport_->send(keys, inv.recipient_key, inv.service_endpoint, request);
  } catch (const Error& e) {
    wallet_.with([&](WalletData& w) {
      auto& c = w.connections.at(conn.conn_id);
      c.problem = e.what();
      move(w, c, ConnState::Abandoned);
    });
    throw;
  }
  if (!wait) return connection(conn.conn_id);
  auto done = wait_connection(conn.conn_id);
  if (done.state == ConnState::Abandoned) {
    throw Error(ErrorCode::HandshakeFailure, "connection " + done.conn_id + " abandoned: " + done.problem);
  }
  return done;
}

// Runs in the inbound HTTP handler so a reused invitation or a missing puzzle
// solution is refused to the sender directly.
void Agent::on_connection_request(const InboundMessage& msg) {
  const auto nonce = json_array<24>(msg.body.at("invitationNonce"));
  const auto challenge = json_array<24>(msg.body.at("challenge"));
  const auto endpoint = msg.body.at("endpoint").get<std::string>();
  const auto label = msg.body.value("label", std::string{});
  wallet_.with([&](WalletData& w) {
    ConnectionRecord* conn = nullptr;
    for (auto& [id, c] : w.connections) {
      if (c.role == ExchangeRole::Initiator && c.invitation_key == msg.recipient) conn = &c;
    }
    if (!conn) throw Error(ErrorCode::NotFound, "no invitation for this key");
    if (conn->invitation_nonce != nonce) throw Error(ErrorCode::HandshakeFailure, "invitation nonce mismatch");
    const auto nonce_key = encoding::base64url(nonce);
    if (w.used_invitation_nonces.contains(nonce_key) || conn->state != ConnState::Invited) {
      throw Error(ErrorCode::ReplayRejected, "invitation already used");
    }
    if (conn->puzzle) {
      if (!msg.body.contains("puzzleSolution") ||
          !puzzle_solved(*conn->puzzle, msg.sender, msg.body["puzzleSolution"].get<std::uint64_t>())) {
        throw Error(ErrorCode::PuzzleRejected,
                    "missing or wrong " + std::to_string(conn->puzzle->difficulty) + "-bit puzzle solution");
      }
    }
    w.used_invitation_nonces.insert(nonce_key);
    conn->their_key = msg.sender;
    conn->their_did = crypto::did_from_key(msg.sender);
    conn->their_endpoint = endpoint;
    conn->their_label = label;
    conn->challenge = challenge;
    move(w, *conn, ConnState::Requested);
  });
}

void Agent::on_connection_response(const InboundMessage& msg, const std::string& conn_id) {
  std::optional<ConnectionRecord> problem_to;
  const bool ok = wallet_.with([&](WalletData& w) {
    auto& c = w.connections.at(conn_id);
    if (c.role != ExchangeRole::Responder || c.state != ConnState::Requested) {
      throw Error(ErrorCode::InvalidState, "unexpected connection response");
    }
    c.their_key = msg.sender;
    c.their_did = crypto::did_from_key(msg.sender);
    if (json_array<24>(msg.body.at("echo")) != c.challenge) {
      c.problem = "HandshakeFailure: echoed nonce does not match the challenge";
      move(w, c, ConnState::Abandoned);
      problem_to = c;
      return false;
    }
    move(w, c, ConnState::Responded);
    move(w, c, ConnState::Active);
    return true;
  });
  const auto conn = connection(conn_id);
  try {
    if (ok) {
      send_to(conn, {{"@type", "connection_ack"}});
    } else {
      send_to(*problem_to, {{"@type", "connection_problem"}, {"problem", problem_to->problem}});
    }
  } catch (const Error& e) {
    spdlog::warn("{}: handshake follow-up not delivered: {}", options_.label, e.what());
  }
}

void Agent::on_connection_ack(const std::string& conn_id) {
  wallet_.with([&](WalletData& w) {
    auto& c = w.connections.at(conn_id);
    if (c.state == ConnState::Responded) move(w, c, ConnState::Active);
  });
}

void Agent::on_connection_problem(const InboundMessage& msg, const std::string& conn_id) {
  wallet_.with([&](WalletData& w) {
    auto& c = w.connections.at(conn_id);
    if (is_terminal(c.state) && c.state != ConnState::Active) return;
    c.problem = msg.body.value("problem", std::string("peer reported a problem"));
    if (c.state != ConnState::Active) move(w, c, ConnState::Abandoned);
  });
}

ledger::Receipt Agent::enroll(const std::string& conn_id, ledger::Role role) {
  const auto conn = active_connection(conn_id);
  const auto thid = new_uuid();
  {
    std::lock_guard lock(verinym_mu_);
    verinyms_[thid] = std::nullopt;
  }
  send_to(conn, {{"@type", "verinym_request"}, {"thid", thid}, {"role", ledger::to_string(role)}});
  std::pair<std::string, crypto::PublicKey> verinym;
  {
    std::unique_lock lock(verinym_mu_);
    if (!verinym_cv_.wait_for(lock, options_.wait_timeout, [&] { return verinyms_[thid].has_value(); })) {
      verinyms_.erase(thid);
      throw Error(ErrorCode::Timeout, "no Verinym from " + conn.their_label);
    }
    verinym = *verinyms_[thid];
    verinyms_.erase(thid);
  }
  const Json payload = {{"dest", verinym.first}, {"verkey", crypto::verkey_string(verinym.second)}, {"role", ledger::to_string(role)}};
  const auto receipt = ledger_->submit(ledger::make_request(ledger::TxnKind::Nym, payload, public_did(), public_key_pair()));
  try {
    send_to(conn, {{"@type", "verinym_ack"}, {"thid", thid}, {"seqNo", receipt.seq_no}});
  } catch (const Error& e) {
    spdlog::warn("{}: verinym ack not delivered: {}", options_.label, e.what());
  }
  return receipt;
}

void Agent::on_verinym_request(const InboundMessage& msg, const ConnectionRecord& conn) {
  // The Verinym is a fresh key, never one of the pairwise ones.
  const auto key = wallet_.with([&](WalletData& w) {
    if (w.public_did.empty()) w.public_did = crypto::did_from_key(w.new_key().public_key);
    return w.keys.at(w.public_did).public_key;
  });
  send_to(conn, {{"@type", "verinym"},
                 {"thid", msg.body.at("thid")},
                 {"did", crypto::did_from_key(key)},
                 {"verkey", crypto::verkey_string(key)}});
}

void Agent::on_verinym(const InboundMessage& msg, const ConnectionRecord&) {
  const auto thid = msg.body.at("thid").get<std::string>();
  const auto key = crypto::key_from_verkey(msg.body.at("verkey").get<std::string>());
  std::lock_guard lock(verinym_mu_);
  auto it = verinyms_.find(thid);
  if (it == verinyms_.end()) return;
  it->second = std::make_pair(crypto::did_from_key(key), key);
  verinym_cv_.notify_all();
}

}  // namespace ssi::agent
