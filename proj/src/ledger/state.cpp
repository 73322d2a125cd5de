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
#include "ssi/ledger/state.hpp"

#include <algorithm>
#include <bit>

#include "ssi/common/error.hpp"
#include "ssi/ledger/acl.hpp"

namespace ssi::ledger {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidTransaction, msg); }

const std::string& str(const Json& payload, const char* key) {
  if (!payload.contains(key) || !payload[key].is_string()) invalid(std::string("payload.") + key + " must be a string");
  return payload[key].get_ref<const std::string&>();
}

void check_attr_names(const Json& payload) {
  if (!payload.contains("attrNames") || !payload["attrNames"].is_array() || payload["attrNames"].empty()) {
    invalid("schema needs a non-empty attrNames array");
  }
  std::set<std::string> seen;
  for (const auto& a : payload["attrNames"]) {
    if (!a.is_string() || a.get_ref<const std::string&>().empty()) invalid("attribute names must be strings");
    if (!seen.insert(a.get<std::string>()).second) invalid("duplicate attribute name " + a.get<std::string>());
  }
}

void validate_payload(const LedgerState& state, const Transaction& txn) {
  const Json& p = txn.payload;
  if (!p.is_object()) invalid("payload must be an object");
  try {
    switch (txn.kind) {
      case TxnKind::Nym: {
        const auto& dest = str(p, "dest");
        const auto verkey = crypto::key_from_verkey(str(p, "verkey"));
        if (crypto::did_from_key(verkey) != dest) invalid("DID does not match verkey");
        if (p.contains("role")) role_from_string(str(p, "role"));
        if (auto it = state.nyms.find(dest); it != state.nyms.end() && it->second.verkey != verkey) {
          invalid("verkey rotation is not supported");
        }
        break;
      }
      case TxnKind::Schema: {
        str(p, "name");
        str(p, "version");
        check_attr_names(p);
        if (state.schemas.contains(schema_id(txn.author_did, str(p, "name"), str(p, "version")))) {
          invalid("schema already registered");
        }
        break;
      }
      case TxnKind::CredDef: {
        auto it = state.schemas.find(str(p, "schemaId"));
        if (it == state.schemas.end()) invalid("unknown schema " + str(p, "schemaId"));
        json_array<32>(p.at("issuerPublicKey"));
        if (!p.at("supportsRevocation").is_boolean()) invalid("supportsRevocation must be boolean");
        if (state.cred_defs.contains(cred_def_id(txn.author_did, it->second.seq_no, str(p, "tag")))) {
          invalid("credential definition already registered");
        }
        break;
      }
      case TxnKind::RevRegDef: {
        auto it = state.cred_defs.find(str(p, "credDefId"));
        if (it == state.cred_defs.end()) invalid("unknown credential definition");
        if (it->second.issuer_did != txn.author_did) throw Error(ErrorCode::Unauthorized, "not the cred def owner");
        if (!it->second.supports_revocation) invalid("credential definition does not support revocation");
        const auto max = p.at("maxCredNum").get<std::uint32_t>();
        if (max == 0 || !std::has_single_bit(max)) invalid("maxCredNum must be a power of two");
        json_array<16>(p.at("salt"));
        json_array<32>(p.at("initialAccumulator"));
        if (state.rev_reg_defs.contains(rev_reg_id(txn.author_did, it->second.id, str(p, "tag")))) {
          invalid("revocation registry already registered");
        }
        break;
      }
      case TxnKind::RevRegEntry: {
        auto it = state.rev_reg_defs.find(str(p, "revRegId"));
        if (it == state.rev_reg_defs.end()) invalid("unknown revocation registry");
        if (it->second.issuer_did != txn.author_did) throw Error(ErrorCode::Unauthorized, "not the registry owner");
        json_array<32>(p.at("accumulator"));
        const auto revoked = p.at("revokedIndices").get<std::set<std::uint32_t>>();
        if (!revoked.empty() && *revoked.rbegin() >= it->second.max_cred_num) invalid("revoked index out of range");
        if (auto e = state.rev_reg_entries.find(it->first); e != state.rev_reg_entries.end()) {
          const auto& prev = e->second.back().revoked;
          if (!std::includes(revoked.begin(), revoked.end(), prev.begin(), prev.end())) {
            invalid("revoked index set may only grow");
          }
        }
        break;
      }
      case TxnKind::Node:
        str(p, "alias");
        crypto::key_from_verkey(str(p, "nodeVerkey"));
        str(p, "endpoint");
        break;
      case TxnKind::Config:
        str(p, "key");
        if (!p.contains("value")) invalid("config entry needs a value");
        break;
    }
  } catch (const Json::exception& e) {
    invalid(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Malformed) invalid(e.what());
    throw;
  }
}

}  // namespace

Digest LedgerState::head_hash() const { return audit.empty() ? Digest{} : txn_hash(audit.back()); }

void validate_request(const LedgerState& state, const Transaction& txn) {
  auto author = state.nyms.find(txn.author_did);
  if (author == state.nyms.end()) throw Error(ErrorCode::Unauthorized, "author DID not on ledger");
  if (!crypto::verify(author->second.verkey, signing_bytes(txn), txn.signature)) {
    throw Error(ErrorCode::InvalidSignature, "request signature does not verify under author verkey");
  }
  if (!acl_permits(author->second.role, txn.kind, txn.payload)) {
    throw Error(ErrorCode::Unauthorized, std::string(to_string(author->second.role)) + " may not write " +
                                             std::string(to_string(txn.kind)));
  }
  if (state.seen_requests.contains({txn.author_did, txn.req_id})) {
    throw Error(ErrorCode::DuplicateRequest, "reqId already used by author");
  }
  validate_payload(state, txn);
}

void apply(LedgerState& state, const Transaction& txn) {
  const Json& p = txn.payload;
  switch (txn.kind) {
    case TxnKind::Nym: {
      const auto& dest = p.at("dest").get_ref<const std::string&>();
      auto& rec = state.nyms[dest];
      if (rec.did.empty()) rec.added_by = txn.author_did;
      rec.did = dest;
      rec.verkey = crypto::key_from_verkey(p.at("verkey").get<std::string>());
      rec.role = p.contains("role") ? role_from_string(p["role"].get<std::string>()) : rec.role;
      rec.seq_no = txn.seq_no;
      break;
    }
    case TxnKind::Schema: {
      SchemaRecord s{schema_id(txn.author_did, p.at("name").get<std::string>(), p.at("version").get<std::string>()),
                     txn.author_did,
                     p.at("name").get<std::string>(),
                     p.at("version").get<std::string>(),
                     p.at("attrNames").get<std::vector<std::string>>(),
                     txn.seq_no};
      state.schemas[s.id] = std::move(s);
      break;
    }
    case TxnKind::CredDef: {
      const auto& schema = state.schemas.at(p.at("schemaId").get<std::string>());
      CredDefRecord c{cred_def_id(txn.author_did, schema.seq_no, p.at("tag").get<std::string>()),
                      schema.id,
                      txn.author_did,
                      p.at("tag").get<std::string>(),
                      json_array<32>(p.at("issuerPublicKey")),
                      p.at("supportsRevocation").get<bool>(),
                      txn.seq_no};
      state.cred_defs[c.id] = std::move(c);
      break;
    }
    case TxnKind::RevRegDef: {
      const auto cd = p.at("credDefId").get<std::string>();
      RevRegDefRecord r{rev_reg_id(txn.author_did, cd, p.at("tag").get<std::string>()),
                        cd,
                        txn.author_did,
                        p.at("tag").get<std::string>(),
                        p.at("maxCredNum").get<std::uint32_t>(),
                        json_array<16>(p.at("salt")),
                        json_array<32>(p.at("initialAccumulator")),
                        txn.seq_no,
                        txn.txn_time};
      state.rev_reg_defs[r.id] = std::move(r);
      break;
    }
    case TxnKind::RevRegEntry: {
      const auto id = p.at("revRegId").get<std::string>();
      state.rev_reg_entries[id].push_back(RevRegState{id, json_array<32>(p.at("accumulator")),
                                                      p.at("revokedIndices").get<std::set<std::uint32_t>>(),
                                                      txn.seq_no, txn.txn_time});
      break;
    }
    case TxnKind::Node:
      state.nodes[p.at("alias").get<std::string>()] = p;
      break;
    case TxnKind::Config:
      state.config[p.at("key").get<std::string>()] = p.at("value");
      break;
  }
  switch (sub_ledger_of(txn.kind)) {
    case SubLedger::Pool:
      state.pool_seq.push_back(txn.seq_no);
      break;
    case SubLedger::Config:
      state.config_seq.push_back(txn.seq_no);
      break;
    case SubLedger::Domain:
      state.domain_seq.push_back(txn.seq_no);
      break;
  }
  state.seen_requests.insert({txn.author_did, txn.req_id});
  state.audit.push_back(txn);
}

RevRegState rev_reg_at(const LedgerState& state, const std::string& id, std::optional<std::int64_t> at_time) {
  auto def = state.rev_reg_defs.find(id);
  if (def == state.rev_reg_defs.end() || (at_time && def->second.txn_time > *at_time)) {
    throw Error(ErrorCode::NotFound, "revocation registry " + id);
  }
  RevRegState out{id, def->second.initial_accumulator, {}, def->second.seq_no, def->second.txn_time};
  if (auto e = state.rev_reg_entries.find(id); e != state.rev_reg_entries.end()) {
    for (const auto& entry : e->second) {
      if (at_time && entry.txn_time > *at_time) break;
      out = entry;
    }
  }
  return out;
}

Json to_json(const LedgerState& s) {
  Json nyms = Json::object(), schemas = Json::object(), cred_defs = Json::object(), rev_defs = Json::object(),
       rev_entries = Json::object(), audit = Json::array();
  for (const auto& [k, v] : s.nyms) nyms[k] = to_json(v);
  for (const auto& [k, v] : s.schemas) schemas[k] = to_json(v);
  for (const auto& [k, v] : s.cred_defs) cred_defs[k] = to_json(v);
  for (const auto& [k, v] : s.rev_reg_defs) rev_defs[k] = to_json(v);
  for (const auto& [k, v] : s.rev_reg_entries) {
    auto& arr = rev_entries[k] = Json::array();
    for (const auto& e : v) arr.push_back(to_json(e));
  }
  for (const auto& t : s.audit) audit.push_back(to_json(t));
  return {{"pool", {{"nodes", s.nodes}, {"seqNos", s.pool_seq}}},
          {"config", {{"params", s.config}, {"seqNos", s.config_seq}}},
          {"domain",
           {{"nyms", nyms},
            {"schemas", schemas},
            {"credDefs", cred_defs},
            {"revRegDefs", rev_defs},
            {"revRegEntries", rev_entries},
            {"seqNos", s.domain_seq}}},
          {"audit", {{"entries", audit}, {"head", bytes_json(s.head_hash())}}}};
}

}  // namespace ssi::ledger
