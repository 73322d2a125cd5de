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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ssi/common/bytes.hpp"
#include "ssi/common/json_util.hpp"
#include "ssi/crypto/commitment.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::ledger {

/// Ordered by privilege: TRUSTEE > STEWARD > ENDORSER > NONE.
enum class Role : std::uint8_t { None = 0, Endorser = 1, Steward = 2, Trustee = 3 };

std::string_view to_string(Role role);
Role role_from_string(std::string_view name);

enum class TxnKind : std::uint8_t { Nym, Schema, CredDef, RevRegDef, RevRegEntry, Node, Config };

inline constexpr TxnKind kAllTxnKinds[] = {TxnKind::Nym,       TxnKind::Schema,      TxnKind::CredDef,
                                           TxnKind::RevRegDef, TxnKind::RevRegEntry, TxnKind::Node,
                                           TxnKind::Config};

std::string_view to_string(TxnKind kind);
TxnKind txn_kind_from_string(std::string_view name);

enum class SubLedger : std::uint8_t { Pool, Config, Domain };
SubLedger sub_ledger_of(TxnKind kind);

struct Transaction {
  std::uint64_t seq_no = 0;
  std::int64_t txn_time = 0;
  TxnKind kind = TxnKind::Nym;
  Json payload = Json::object();
  std::string author_did;
  std::uint64_t req_id = 0;
  crypto::Signature signature{};
  Digest prev_hash{};
};

/// Bytes the author signs: canonical {kind, payload, authorDid, reqId}.
Bytes signing_bytes(const Transaction& txn);

/// Chain hash of a committed entry: H(0x03 || canonical(entry)).
Digest txn_hash(const Transaction& txn);

Json to_json(const Transaction& txn);
Transaction transaction_from_json(const Json& j);

/// Builds a signed write request; the leader fills seqNo, txnTime, prevHash.
Transaction make_request(TxnKind kind, Json payload, const std::string& author_did, const crypto::KeyPair& author);

struct Receipt {
  std::uint64_t seq_no = 0;
  std::int64_t txn_time = 0;
  Digest root_hash{};
};

Json to_json(const Receipt& r);
Receipt receipt_from_json(const Json& j);

struct NymRecord {
  std::string did;
  crypto::PublicKey verkey{};
  Role role = Role::None;
  std::string added_by;
  std::uint64_t seq_no = 0;
};

struct SchemaRecord {
  std::string id;
  std::string issuer_did;
  std::string name;
  std::string version;
  std::vector<std::string> attr_names;
  std::uint64_t seq_no = 0;
};

struct CredDefRecord {
  std::string id;
  std::string schema_id;
  std::string issuer_did;
  std::string tag;
  crypto::PublicKey issuer_public_key{};
  bool supports_revocation = false;
  std::uint64_t seq_no = 0;
};

struct RevRegDefRecord {
  std::string id;
  std::string cred_def_id;
  std::string issuer_did;
  std::string tag;
  std::uint32_t max_cred_num = 0;
  crypto::Salt salt{};
  Digest initial_accumulator{};
  std::uint64_t seq_no = 0;
  std::int64_t txn_time = 0;
};

/// Accumulator value as of some ledger time, with the entry it came from.
struct RevRegState {
  std::string id;
  Digest accumulator{};
  std::set<std::uint32_t> revoked;
  std::uint64_t seq_no = 0;
  std::int64_t txn_time = 0;
};

Json to_json(const NymRecord& r);
NymRecord nym_from_json(const Json& j);
Json to_json(const SchemaRecord& r);
SchemaRecord schema_from_json(const Json& j);
Json to_json(const CredDefRecord& r);
CredDefRecord cred_def_from_json(const Json& j);
Json to_json(const RevRegDefRecord& r);
RevRegDefRecord rev_reg_def_from_json(const Json& j);
Json to_json(const RevRegState& r);
RevRegState rev_reg_state_from_json(const Json& j);

std::string schema_id(std::string_view issuer_did, std::string_view name, std::string_view version);
std::string cred_def_id(std::string_view issuer_did, std::uint64_t schema_seq_no, std::string_view tag);
std::string rev_reg_id(std::string_view issuer_did, std::string_view cred_def_id, std::string_view tag);

/// Splits "{did}:2:{name}:{version}"; nullopt if the shape does not match.
struct SchemaIdParts {
  std::string issuer_did, name, version;
};
std::optional<SchemaIdParts> parse_schema_id(std::string_view id);

}  // namespace ssi::ledger
