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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssi/ledger/state.hpp"

namespace ssi::ledger {

/// Rebuilds ledger state from an audit log. Throws CorruptLogError naming the
/// first seqNo whose prevHash does not match its predecessor. When
/// \p expected_head is given (a receipt's rootHash) and the recomputed head
/// differs, the break is reported at lastSeqNo + 1.
LedgerState replay(std::span<const Transaction> log, std::optional<Digest> expected_head = std::nullopt);

/// JSON lines, one Transaction per line, in seqNo order.
std::string export_audit_log(std::span<const Transaction> log);
std::vector<Transaction> parse_audit_log(std::string_view text);

}  // namespace ssi::ledger
