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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssi/common/json_util.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::ledger {

/// Every sub-ledger view is a fold of the audit log; nothing here is written
/// except through apply().
struct LedgerState {
  // pool sub-ledger
  std::map<std::string, Json> nodes;
  // config sub-ledger
  std::map<std::string, Json> config;
  // domain sub-ledger
  std::map<std::string, NymRecord> nyms;
  std::map<std::string, SchemaRecord> schemas;
  std::map<std::string, CredDefRecord> cred_defs;
  std::map<std::string, RevRegDefRecord> rev_reg_defs;
  std::map<std::string, std::vector<RevRegState>> rev_reg_entries;
  // seqNos per sub-ledger, in commit order
  std::vector<std::uint64_t> pool_seq, config_seq, domain_seq;
  // audit ledger
  std::vector<Transaction> audit;
  std::set<std::pair<std::string, std::uint64_t>> seen_requests;

  std::uint64_t height() const { return audit.size(); }
  Digest head_hash() const;
};

/// Checks authorship, signature, ACL and payload shape against \p state.
/// Throws Unauthorized, InvalidSignature, DuplicateRequest or InvalidTransaction.
void validate_request(const LedgerState& state, const Transaction& txn);

/// Folds one committed entry into the state. No permission checks.
void apply(LedgerState& state, const Transaction& txn);

/// Latest accumulator at or before \p at_time (ms); NotFound if the registry
/// did not exist yet.
RevRegState rev_reg_at(const LedgerState& state, const std::string& rev_reg_id, std::optional<std::int64_t> at_time);

Json to_json(const LedgerState& state);

}  // namespace ssi::ledger
