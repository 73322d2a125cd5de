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
#include "ssi/ledger/types.hpp"

#include <sodium.h>

#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::ledger {

namespace {

constexpr std::string_view kRoleNames[] = {"NONE", "ENDORSER", "STEWARD", "TRUSTEE"};
constexpr std::string_view kKindNames[] = {"NYM", "SCHEMA", "CRED_DEF", "REV_REG_DEF", "REV_REG_ENTRY", "NODE", "CONFIG"};

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Role role) { return kRoleNames[static_cast<std::size_t>(role)]; }

Role role_from_string(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kRoleNames); ++i) {
    if (kRoleNames[i] == name) return static_cast<Role>(i);
  }
  throw Error(ErrorCode::Malformed, "unknown role " + std::string(name));
}

std::string_view to_string(TxnKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

TxnKind txn_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i) {
    if (kKindNames[i] == name) return static_cast<TxnKind>(i);
  }
  throw Error(ErrorCode::Malformed, "unknown transaction kind " + std::string(name));
}

SubLedger sub_ledger_of(TxnKind kind) {
  switch (kind) {
    case TxnKind::Node:
      return SubLedger::Pool;
    case TxnKind::Config:
      return SubLedger::Config;
    default:
      return SubLedger::Domain;
  }
}

Bytes signing_bytes(const Transaction& txn) {
  const Json body = {{"kind", to_string(txn.kind)},
                     {"payload", txn.payload},
                     {"authorDid", txn.author_did},
                     {"reqId", txn.req_id}};
  return to_bytes(canonical(body));
}

Digest txn_hash(const Transaction& txn) {
  return crypto::tagged_hash(crypto::Domain::TxnChain, as_bytes(canonical(to_json(txn))));
}

Json to_json(const Transaction& txn) {
  return {{"seqNo", txn.seq_no},
          {"txnTime", txn.txn_time},
          {"kind", to_string(txn.kind)},
          {"payload", txn.payload},
          {"authorDid", txn.author_did},
          {"reqId", txn.req_id},
          {"signature", bytes_json(txn.signature)},
          {"prevHash", bytes_json(txn.prev_hash)}};
}

Transaction transaction_from_json(const Json& j) {
  return parse_guard("transaction", [&] {
    Transaction t;
    t.seq_no = j.at("seqNo").get<std::uint64_t>();
    t.txn_time = j.at("txnTime").get<std::int64_t>();
    t.kind = txn_kind_from_string(j.at("kind").get<std::string>());
    t.payload = j.at("payload");
    t.author_did = j.at("authorDid").get<std::string>();
    t.req_id = j.at("reqId").get<std::uint64_t>();
    t.signature = json_array<64>(j.at("signature"));
    t.prev_hash = json_array<32>(j.at("prevHash"));
    return t;
  });
}

Transaction make_request(TxnKind kind, Json payload, const std::string& author_did, const crypto::KeyPair& author) {
  Transaction t;
  t.kind = kind;
  t.payload = std::move(payload);
  t.author_did = author_did;
  // 53 bits keeps reqId exact in any JSON consumer.
  t.req_id = randombytes_random() | (static_cast<std::uint64_t>(randombytes_uniform(1u << 21)) << 32);
  t.signature = crypto::sign(author, signing_bytes(t));
  return t;
}

Json to_json(const Receipt& r) {
  return {{"seqNo", r.seq_no}, {"txnTime", r.txn_time}, {"rootHash", bytes_json(r.root_hash)}};
}

Receipt receipt_from_json(const Json& j) {
  return parse_guard("receipt", [&] {
    return Receipt{j.at("seqNo").get<std::uint64_t>(), j.at("txnTime").get<std::int64_t>(),
                   json_array<32>(j.at("rootHash"))};
  });
}

Json to_json(const NymRecord& r) {
  return {{"did", r.did},
          {"verkey", crypto::verkey_string(r.verkey)},
          {"role", to_string(r.role)},
          {"addedBy", r.added_by},
          {"seqNo", r.seq_no}};
}

NymRecord nym_from_json(const Json& j) {
  return parse_guard("nym", [&] {
    return NymRecord{j.at("did").get<std::string>(), crypto::key_from_verkey(j.at("verkey").get<std::string>()),
                     role_from_string(j.at("role").get<std::string>()), j.at("addedBy").get<std::string>(),
                     j.at("seqNo").get<std::uint64_t>()};
  });
}

Json to_json(const SchemaRecord& r) {
  return {{"id", r.id},       {"issuerDid", r.issuer_did}, {"name", r.name},
          {"version", r.version}, {"attrNames", r.attr_names}, {"seqNo", r.seq_no}};
}

SchemaRecord schema_from_json(const Json& j) {
  return parse_guard("schema", [&] {
    return SchemaRecord{j.at("id").get<std::string>(),      j.at("issuerDid").get<std::string>(),
                        j.at("name").get<std::string>(),    j.at("version").get<std::string>(),
                        j.at("attrNames").get<std::vector<std::string>>(), j.at("seqNo").get<std::uint64_t>()};
  });
}

Json to_json(const CredDefRecord& r) {
  return {{"id", r.id},
          {"schemaId", r.schema_id},
          {"issuerDid", r.issuer_did},
          {"tag", r.tag},
          {"issuerPublicKey", bytes_json(r.issuer_public_key)},
          {"supportsRevocation", r.supports_revocation},
          {"seqNo", r.seq_no}};
}

CredDefRecord cred_def_from_json(const Json& j) {
  return parse_guard("cred def", [&] {
    return CredDefRecord{j.at("id").get<std::string>(),        j.at("schemaId").get<std::string>(),
                         j.at("issuerDid").get<std::string>(), j.at("tag").get<std::string>(),
                         json_array<32>(j.at("issuerPublicKey")), j.at("supportsRevocation").get<bool>(),
                         j.at("seqNo").get<std::uint64_t>()};
  });
}

Json to_json(const RevRegDefRecord& r) {
  return {{"id", r.id},
          {"credDefId", r.cred_def_id},
          {"issuerDid", r.issuer_did},
          {"tag", r.tag},
          {"maxCredNum", r.max_cred_num},
          {"salt", bytes_json(r.salt)},
          {"initialAccumulator", bytes_json(r.initial_accumulator)},
          {"seqNo", r.seq_no},
          {"txnTime", r.txn_time}};
}

RevRegDefRecord rev_reg_def_from_json(const Json& j) {
  return parse_guard("rev reg def", [&] {
    return RevRegDefRecord{j.at("id").get<std::string>(),
                           j.at("credDefId").get<std::string>(),
                           j.at("issuerDid").get<std::string>(),
                           j.at("tag").get<std::string>(),
                           j.at("maxCredNum").get<std::uint32_t>(),
                           json_array<16>(j.at("salt")),
                           json_array<32>(j.at("initialAccumulator")),
                           j.at("seqNo").get<std::uint64_t>(),
                           j.at("txnTime").get<std::int64_t>()};
  });
}

Json to_json(const RevRegState& r) {
  return {{"id", r.id},
          {"accumulator", bytes_json(r.accumulator)},
          {"revokedIndices", r.revoked},
          {"seqNo", r.seq_no},
          {"txnTime", r.txn_time}};
}

RevRegState rev_reg_state_from_json(const Json& j) {
  return parse_guard("rev reg", [&] {
    return RevRegState{j.at("id").get<std::string>(), json_array<32>(j.at("accumulator")),
                       j.at("revokedIndices").get<std::set<std::uint32_t>>(), j.at("seqNo").get<std::uint64_t>(),
                       j.at("txnTime").get<std::int64_t>()};
  });
}

std::string schema_id(std::string_view issuer_did, std::string_view name, std::string_view version) {
  return std::string(issuer_did) + ":2:" + std::string(name) + ":" + std::string(version);
}

std::string cred_def_id(std::string_view issuer_did, std::uint64_t schema_seq_no, std::string_view tag) {
  return std::string(issuer_did) + ":3:CL:" + std::to_string(schema_seq_no) + ":" + std::string(tag);
}

std::string rev_reg_id(std::string_view issuer_did, std::string_view cred_def_id, std::string_view tag) {
  return std::string(issuer_did) + ":4:" + std::string(cred_def_id) + ":CL_ACCUM:" + std::string(tag);
}

std::optional<SchemaIdParts> parse_schema_id(std::string_view id) {
  const auto first = id.find(':');
  if (first == std::string_view::npos || id.substr(first, 3) != ":2:") return std::nullopt;
  const auto rest = id.substr(first + 3);
  const auto last = rest.rfind(':');
  if (last == std::string_view::npos || last == 0) return std::nullopt;
  return SchemaIdParts{std::string(id.substr(0, first)), std::string(rest.substr(0, last)),
                       std::string(rest.substr(last + 1))};
}

}  // namespace ssi::ledger
