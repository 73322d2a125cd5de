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
#include "ssi/ledger/replay.hpp"

#include <sstream>

#include "ssi/common/error.hpp"

namespace ssi::ledger {

LedgerState replay(std::span<const Transaction> log, std::optional<Digest> expected_head) {
  LedgerState state;
  Digest prev{};
  for (std::size_t i = 0; i < log.size(); ++i) {
    const std::uint64_t position = i + 1;
    const auto& txn = log[i];
    if (txn.prev_hash != prev) throw CorruptLogError(position, "prevHash does not match preceding entry");
    if (txn.seq_no != position) throw CorruptLogError(position, "seqNo out of order");
    try {
      apply(state, txn);
    } catch (const std::exception& e) {
      throw CorruptLogError(position, std::string("entry does not apply: ") + e.what());
    }
    prev = txn_hash(txn);
  }
  if (expected_head && state.head_hash() != *expected_head) {
    throw CorruptLogError(log.size() + 1, "log head does not match the anchored root hash");
  }
  return state;
}

std::string export_audit_log(std::span<const Transaction> log) {
  std::string out;
  for (const auto& t : log) out += canonical(to_json(t)) + "\n";
  return out;
}

std::vector<Transaction> parse_audit_log(std::string_view text) {
  std::vector<Transaction> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(transaction_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::Malformed, std::string("audit log line: ") + e.what());
    }
  }
  return out;
}

}  // namespace ssi::ledger
