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
#include <algorithm>

#include <spdlog/spdlog.h>

#include "ssi/agent/agent.hpp"
#include "ssi/common/error.hpp"

namespace ssi::agent {

namespace {

bool covers(const std::vector<std::string>& reveal, const std::vector<std::string>& requested) {
  return std::all_of(requested.begin(), requested.end(), [&](const std::string& a) {
    return std::find(reveal.begin(), reveal.end(), a) != reveal.end();
  });
}

}  // namespace

PresentationExchange Agent::send_proof_request(const std::string& conn_id, const std::string& cred_def_id,
                                               const std::vector<std::string>& requested_attrs,
                                               std::optional<std::int64_t> non_revoked_at_time) {
  const auto conn = active_connection(conn_id);
  const auto cred_def = ledger_->get_cred_def(cred_def_id);
  const auto schema = ledger_->get_schema(cred_def.schema_id);
  auto request = anoncreds::new_presentation_request(cred_def_id, requested_attrs, non_revoked_at_time);
  anoncreds::check_request(request, schema.attr_names);

  const auto rec = wallet_.with([&](WalletData& w) {
    PresentationExchange r;
    r.pres_ex_id = new_uuid();
    r.thread_id = r.pres_ex_id;
    r.conn_id = conn_id;
    r.role = ExchangeRole::Initiator;
    r.state = PresExState::RequestSent;
    r.request = request;
    announce_new(r);
    w.pres_exchanges.emplace(r.pres_ex_id, r);
    return r;
  });
  try {
    send_to(conn, {{"@type", "presentation_request"}, {"thid", rec.thread_id}, {"request", anoncreds::to_json(request)}});
  } catch (const Error& e) {
    wallet_.with([&](WalletData& w) {
      auto& r = w.pres_exchanges.at(rec.pres_ex_id);
      r.problem = e.what();
      move(w, r, PresExState::Declined);
    });
    throw;
  }
  return pres_exchange(rec.pres_ex_id);
}

void Agent::on_presentation_request(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = wallet_.with([&](WalletData& w) {
    PresentationExchange r;
    r.pres_ex_id = new_uuid();
    r.thread_id = msg.body.at("thid").get<std::string>();
    r.conn_id = conn.conn_id;
    r.role = ExchangeRole::Responder;
    r.state = PresExState::RequestReceived;
    r.request = anoncreds::presentation_request_from_json(msg.body.at("request"));
    announce_new(r);
    w.pres_exchanges.emplace(r.pres_ex_id, r);
    return r.pres_ex_id;
  });
  if (!options_.auto_accept) return;
  try {
    respond_proof_request(id, ProofDecision{});
  } catch (const Error& e) {
    spdlog::info("{}: declining proof request: {}", options_.label, e.what());
    respond_proof_request(id, ProofDecision{false, {}, {}});
  }
}

PresentationExchange Agent::respond_proof_request(const std::string& pres_ex_id, const ProofDecision& decision) {
  const auto rec = pres_exchange(pres_ex_id);
  if (rec.role != ExchangeRole::Responder || rec.state != PresExState::RequestReceived) {
    throw Error(ErrorCode::InvalidState, "exchange " + pres_ex_id + " is " + std::string(to_string(rec.state)));
  }
  const auto conn = connection(rec.conn_id);
  if (!decision.accept) {
    wallet_.with([&](WalletData& w) {
      auto& r = w.pres_exchanges.at(pres_ex_id);
      r.problem = "declined by holder";
      move(w, r, PresExState::Declined);
    });
    send_to(conn, {{"@type", "presentation_decline"}, {"thid", rec.thread_id}});
    return pres_exchange(pres_ex_id);
  }

  const auto stored = wallet_.with([&](const WalletData& w) {
    if (!decision.credential_id.empty()) {
      auto it = w.credentials.find(decision.credential_id);
      if (it == w.credentials.end()) throw Error(ErrorCode::NotFound, "credential " + decision.credential_id);
      if (it->second.credential.cred_def_id != rec.request.cred_def_id) {
        throw Error(ErrorCode::NoMatchingCredential, "credential " + decision.credential_id + " is not from " +
                                                         rec.request.cred_def_id);
      }
      if (it->second.revoked) throw Error(ErrorCode::CredentialRevoked, "credential " + decision.credential_id);
      return it->second;
    }
    for (const auto& [id, c] : w.credentials) {
      if (c.credential.cred_def_id == rec.request.cred_def_id && !c.revoked) return c;
    }
    throw Error(ErrorCode::NoMatchingCredential, "no usable credential from " + rec.request.cred_def_id);
  });

  auto request = rec.request;
  if (!decision.reveal_attrs.empty()) {
    if (!covers(decision.reveal_attrs, rec.request.requested_attrs)) {
      throw Error(ErrorCode::InvalidArgument, "revealed attributes must include every requested one");
    }
    request.requested_attrs = decision.reveal_attrs;
  }

  std::optional<anoncreds::RevocationSnapshot> snapshot;
  if (stored.credential.revocable()) {
    const auto& reg = stored.credential.rev_reg_id;
    snapshot = anoncreds::RevocationSnapshot{ledger_->get_rev_reg_def(reg),
                                             ledger_->get_rev_reg(reg, rec.request.non_revoked_at_time)};
  }
  const auto holder = wallet_.with(
      [&](const WalletData& w) { return w.key_for(stored.credential.holder_binding_key); });
  anoncreds::Presentation presentation;
  try {
    presentation = anoncreds::present(stored.credential, request, holder, snapshot, clock().now_ms());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CredentialRevoked) mark_revoked(stored.credential_id, "ledger");
    throw;
  }
  const auto body = anoncreds::to_json(presentation);
  wallet_.with([&](WalletData& w) {
    auto& r = w.pres_exchanges.at(pres_ex_id);
    r.presentation = body;
    move(w, r, PresExState::PresentationSent);
  });
  send_to(conn, {{"@type", "presentation"}, {"thid", rec.thread_id}, {"presentation", body}});
  return pres_exchange(pres_ex_id);
}

void Agent::on_presentation(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_pres_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  wallet_.with([&](WalletData& w) {
    auto& r = w.pres_exchanges.at(id);
    r.presentation = msg.body.at("presentation");
    move(w, r, PresExState::PresentationReceived);
  });
  if (options_.auto_verify) verify_presentation(id);
}

PresentationExchange Agent::verify_presentation(const std::string& pres_ex_id) {
  const auto rec = pres_exchange(pres_ex_id);
  if (rec.role != ExchangeRole::Initiator || rec.state != PresExState::PresentationReceived || !rec.presentation) {
    throw Error(ErrorCode::InvalidState, "exchange " + pres_ex_id + " is " + std::string(to_string(rec.state)));
  }
  const auto result = anoncreds::verify_json(*rec.presentation, rec.request, {*ledger_, clock(), window_ms_});
  wallet_.with([&](WalletData& w) {
    auto& r = w.pres_exchanges.at(pres_ex_id);
    r.result = result;
    if (!result.verified) r.problem = std::string(anoncreds::to_string(result.reason)) + ": " + result.detail;
    move(w, r, result.verified ? PresExState::VerifiedTrue : PresExState::VerifiedFalse);
  });
  send_to(connection(rec.conn_id),
          {{"@type", "presentation_ack"}, {"thid", rec.thread_id}, {"result", anoncreds::to_json(result)}});
  return pres_exchange(pres_ex_id);
}

void Agent::on_presentation_ack(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_pres_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  const auto result = verification_result_from_json(msg.body.at("result"));
  wallet_.with([&](WalletData& w) {
    auto& r = w.pres_exchanges.at(id);
    r.result = result;
    move(w, r, result.verified ? PresExState::VerifiedTrue : PresExState::VerifiedFalse);
  });
}

void Agent::on_presentation_decline(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_pres_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  wallet_.with([&](WalletData& w) {
    auto& r = w.pres_exchanges.at(id);
    if (is_terminal(r.state)) return;
    r.problem = msg.body.value("problem", std::string("declined by holder"));
    move(w, r, PresExState::Declined);
  });
}

}  // namespace ssi::agent
