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
#include <spdlog/spdlog.h>

#include "ssi/agent/agent.hpp"
#include "ssi/anoncreds/schema.hpp"
#include "ssi/common/error.hpp"

namespace ssi::agent {

std::string Agent::register_schema(const std::string& name, const std::string& version,
                                   const std::vector<std::string>& attr_names) {
  const auto did = public_did();
  if (did.empty()) throw Error(ErrorCode::Unauthorized, "agent has no public DID");
  const auto schema = anoncreds::create_schema(did, name, version, attr_names);
  ledger_->submit(ledger::make_request(ledger::TxnKind::Schema, anoncreds::schema_payload(schema), did, public_key_pair()));
  return schema.id;
}

RegisteredCredDef Agent::register_cred_def(const std::string& schema_id, const std::string& tag,
                                           bool supports_revocation, std::uint32_t max_cred_num) {
  const auto did = public_did();
  if (did.empty()) throw Error(ErrorCode::Unauthorized, "agent has no public DID");
  const auto author = public_key_pair();
  const auto schema = ledger_->get_schema(schema_id);
  const auto issuer_key = wallet_.with([](WalletData& w) { return w.new_key(); });

  RegisteredCredDef out;
  out.cred_def_id = ledger::cred_def_id(did, schema.seq_no, tag);
  // the registry is checked before anything is written
  std::optional<anoncreds::RevocationRegistry> registry;
  if (supports_revocation) {
    registry = anoncreds::RevocationRegistry::create(ledger::rev_reg_id(did, out.cred_def_id, tag), out.cred_def_id,
                                                     max_cred_num);
  }
  ledger_->submit(ledger::make_request(
      ledger::TxnKind::CredDef, anoncreds::cred_def_payload(schema_id, tag, issuer_key.public_key, supports_revocation),
      did, author));
  wallet_.with([&](WalletData& w) { w.cred_def_keys[out.cred_def_id] = crypto::did_from_key(issuer_key.public_key); });
  if (registry) {
    ledger_->submit(ledger::make_request(ledger::TxnKind::RevRegDef, registry->def_payload(tag), did, author));
    out.rev_reg_id = registry->id();
    wallet_.with([&](WalletData& w) {
      w.cred_def_registry[out.cred_def_id] = registry->id();
      w.registries.insert_or_assign(registry->id(), *registry);
    });
  }
  return out;
}

CredentialExchange Agent::send_offer(const std::string& conn_id, const std::string& cred_def_id,
                                     const std::map<std::string, std::string>& values) {
  const auto conn = active_connection(conn_id);
  const auto cred_def = ledger_->get_cred_def(cred_def_id);
  const bool ours = wallet_.with([&](const WalletData& w) { return w.cred_def_keys.contains(cred_def_id); });
  if (!ours) throw Error(ErrorCode::NotFound, "no issuer key for " + cred_def_id);
  const auto schema = ledger_->get_schema(cred_def.schema_id);
  for (const auto& a : schema.attr_names) {
    if (!values.contains(a)) throw Error(ErrorCode::SchemaMismatch, "missing attribute " + a);
  }
  if (values.size() != schema.attr_names.size()) throw Error(ErrorCode::SchemaMismatch, "attributes outside the schema");

  const auto rec = wallet_.with([&](WalletData& w) {
    CredentialExchange r;
    r.cred_ex_id = new_uuid();
    r.thread_id = r.cred_ex_id;
    r.conn_id = conn_id;
    r.role = ExchangeRole::Initiator;
    r.state = CredExState::OfferSent;
    r.cred_def_id = cred_def_id;
    r.schema_id = cred_def.schema_id;
    r.values = values;
    announce_new(r);
    w.cred_exchanges.emplace(r.cred_ex_id, r);
    return r;
  });
  try {
    send_to(conn, {{"@type", "credential_offer"},
                   {"thid", rec.thread_id},
                   {"credDefId", cred_def_id},
                   {"schemaId", cred_def.schema_id},
                   {"values", values}});
  } catch (const Error& e) {
    fail_cred_ex(rec.cred_ex_id, e.what(), false);
    throw;
  }
  return cred_exchange(rec.cred_ex_id);
}

void Agent::on_credential_offer(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = wallet_.with([&](WalletData& w) {
    CredentialExchange r;
    r.cred_ex_id = new_uuid();
    r.thread_id = msg.body.at("thid").get<std::string>();
    r.conn_id = conn.conn_id;
    r.role = ExchangeRole::Responder;
    r.state = CredExState::OfferReceived;
    r.cred_def_id = msg.body.at("credDefId").get<std::string>();
    r.schema_id = msg.body.at("schemaId").get<std::string>();
    r.values = msg.body.at("values").get<std::map<std::string, std::string>>();
    announce_new(r);
    w.cred_exchanges.emplace(r.cred_ex_id, r);
    return r.cred_ex_id;
  });
  if (options_.auto_accept) respond_offer(id, true);
}

CredentialExchange Agent::respond_offer(const std::string& cred_ex_id, bool accept) {
  const auto [rec, binding] = wallet_.with([&](WalletData& w) {
    auto it = w.cred_exchanges.find(cred_ex_id);
    if (it == w.cred_exchanges.end()) throw Error(ErrorCode::NotFound, "credential exchange " + cred_ex_id);
    auto& r = it->second;
    if (r.role != ExchangeRole::Responder || r.state != CredExState::OfferReceived) {
      throw Error(ErrorCode::InvalidState, "exchange " + cred_ex_id + " is " + std::string(to_string(r.state)));
    }
    crypto::PublicKey key{};
    if (accept) {
      key = w.new_key().public_key;
      move(w, r, CredExState::RequestSent);
    } else {
      move(w, r, CredExState::Declined);
    }
    return std::make_pair(r, key);
  });
  const auto conn = connection(rec.conn_id);
  try {
    if (accept) {
      send_to(conn, {{"@type", "credential_request"}, {"thid", rec.thread_id}, {"holderBindingKey", bytes_json(binding)}});
    } else {
      send_to(conn, {{"@type", "credential_decline"}, {"thid", rec.thread_id}});
    }
  } catch (const Error& e) {
    if (accept) fail_cred_ex(cred_ex_id, e.what(), false);
    throw;
  }
  return cred_exchange(cred_ex_id);
}

void Agent::on_credential_request(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_cred_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  const auto binding = json_array<32>(msg.body.at("holderBindingKey"));
  anoncreds::Credential cred;
  try {
    const auto rec = cred_exchange(id);
    const auto cred_def = ledger_->get_cred_def(rec.cred_def_id);
    const auto schema = ledger_->get_schema(cred_def.schema_id);
    cred = wallet_.with([&](WalletData& w) {
      auto& r = w.cred_exchanges.at(id);
      move(w, r, CredExState::RequestReceived);
      const auto& issuer = w.keys.at(w.cred_def_keys.at(r.cred_def_id));
      anoncreds::RevocationRegistry* registry = nullptr;
      if (auto reg = w.cred_def_registry.find(r.cred_def_id); reg != w.cred_def_registry.end()) {
        registry = &w.registries.at(reg->second);
      }
      auto c = anoncreds::issue(cred_def, issuer, schema.attr_names, registry, binding, r.values);
      r.rev_reg_id = c.rev_reg_id;
      r.rev_index = c.rev_index;
      move(w, r, CredExState::CredentialIssued);
      return c;
    });
  } catch (const Error& e) {
    fail_cred_ex(id, e.what(), true);
    return;
  }
  send_to(conn, {{"@type", "credential_issue"}, {"thid", msg.body.at("thid")}, {"credential", anoncreds::to_json(cred)}});
}

void Agent::on_credential_issue(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_cred_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  try {
    const auto cred = anoncreds::credential_from_json(msg.body.at("credential"));
    const auto rec = cred_exchange(id);
    const auto cred_def = ledger_->get_cred_def(rec.cred_def_id);
    std::map<std::string, std::string> values;
    for (const auto& [name, a] : cred.attributes) values[name] = a.value;
    if (cred.cred_def_id != rec.cred_def_id || values != rec.values ||
        !anoncreds::check_credential(cred, cred_def.issuer_public_key)) {
      throw Error(ErrorCode::InvalidSignature, "credential does not match the offer or the issuer key");
    }
    wallet_.with([&](WalletData& w) {
      w.key_for(cred.holder_binding_key);  // we hold the binding key
      auto& r = w.cred_exchanges.at(id);
      move(w, r, CredExState::CredentialIssued);
      StoredCredential stored{new_uuid(), id, cred, false};
      r.credential_id = stored.credential_id;
      w.credentials.emplace(stored.credential_id, std::move(stored));
      move(w, r, CredExState::Stored);
    });
  } catch (const Error& e) {
    fail_cred_ex(id, e.what(), true);
    return;
  }
  send_to(conn, {{"@type", "credential_ack"}, {"thid", msg.body.at("thid")}});
}

void Agent::on_credential_ack(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_cred_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  wallet_.with([&](WalletData& w) { move(w, w.cred_exchanges.at(id), CredExState::Acked); });
}

void Agent::on_credential_decline(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_cred_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  wallet_.with([&](WalletData& w) {
    auto& r = w.cred_exchanges.at(id);
    if (is_terminal(r.state)) return;
    r.problem = msg.body.value("problem", std::string("declined by peer"));
    move(w, r, CredExState::Declined);
  });
}

void Agent::fail_cred_ex(const std::string& id, const std::string& problem, bool notify_peer) {
  const auto rec = wallet_.with([&](WalletData& w) {
    auto& r = w.cred_exchanges.at(id);
    if (!is_terminal(r.state)) {
      r.problem = problem;
      move(w, r, CredExState::Declined);
    }
    return r;
  });
  if (!notify_peer) return;
  try {
    send_to(connection(rec.conn_id), {{"@type", "credential_decline"}, {"thid", rec.thread_id}, {"problem", problem}});
  } catch (const Error& e) {
    spdlog::warn("{}: decline not delivered: {}", options_.label, e.what());
  }
}

CredentialExchange Agent::revoke(const std::string& cred_ex_id, bool publish) {
  const auto did = public_did();
  const auto [rec, delta] = wallet_.with([&](WalletData& w) {
    auto it = w.cred_exchanges.find(cred_ex_id);
    if (it == w.cred_exchanges.end() || it->second.role != ExchangeRole::Initiator) {
      throw Error(ErrorCode::NotFound, "no issued credential for exchange " + cred_ex_id);
    }
    auto& r = it->second;
    if (r.rev_reg_id.empty()) throw Error(ErrorCode::InvalidArgument, "credential was issued without revocation support");
    auto d = w.registries.at(r.rev_reg_id).revoke(r.rev_index);
    r.revoked = true;
    return std::make_pair(r, d);
  });
  if (publish) {
    ledger_->submit(ledger::make_request(ledger::TxnKind::RevRegEntry, anoncreds::rev_reg_entry_payload(delta), did,
                                         public_key_pair()));
    wallet_.with([&](WalletData& w) { w.registries.at(rec.rev_reg_id).clear_pending(); });
  }
  events_.emit("revocation", cred_ex_id, "REVOKED",
               {{"revRegId", rec.rev_reg_id}, {"revIndex", rec.rev_index}, {"published", publish}});
  try {
    send_to(connection(rec.conn_id), {{"@type", "revocation_notification"},
                                      {"thid", rec.thread_id},
                                      {"revRegId", rec.rev_reg_id},
                                      {"revIndex", rec.rev_index}});
  } catch (const Error& e) {
    // at-most-once delivery; the holder also polls the ledger
    spdlog::warn("{}: revocation notice not delivered: {}", options_.label, e.what());
  }
  return cred_exchange(cred_ex_id);
}

void Agent::mark_revoked(const std::string& credential_id, const std::string& source) {
  wallet_.with([&](WalletData& w) {
    auto& c = w.credentials.at(credential_id);
    if (c.revoked) return;
    c.revoked = true;
    if (auto ex = w.cred_exchanges.find(c.cred_ex_id); ex != w.cred_exchanges.end()) ex->second.revoked = true;
    events_.emit("revocation", credential_id, "REVOKED",
                 {{"credentialId", credential_id},
                  {"credExId", c.cred_ex_id},
                  {"revRegId", c.credential.rev_reg_id},
                  {"revIndex", c.credential.rev_index},
                  {"source", source}});
  });
}

void Agent::on_revocation_notification(const InboundMessage& msg, const ConnectionRecord& conn) {
  const auto id = find_cred_ex_by_thread(msg.body.at("thid").get<std::string>(), conn.conn_id);
  const auto credential_id = cred_exchange(id).credential_id;
  if (credential_id.empty()) return;
  // trust the ledger, not the message
  const auto stored = wallet_.with([&](const WalletData& w) { return w.credentials.at(credential_id); });
  const auto state = ledger_->get_rev_reg(stored.credential.rev_reg_id, std::nullopt);
  if (state.revoked.contains(stored.credential.rev_index)) mark_revoked(credential_id, "notification");
}

std::vector<std::string> Agent::refresh_revocations() {
  const auto creds = credentials();
  std::vector<std::string> newly;
  for (const auto& c : creds) {
    if (c.revoked || !c.credential.revocable()) continue;
    const auto state = ledger_->get_rev_reg(c.credential.rev_reg_id, std::nullopt);
    if (state.revoked.contains(c.credential.rev_index)) {
      mark_revoked(c.credential_id, "ledger");
      newly.push_back(c.credential_id);
    }
  }
  return newly;
}

}  // namespace ssi::agent
