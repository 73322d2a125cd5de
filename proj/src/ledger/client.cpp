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
#include "ssi/ledger/client.hpp"

#include "ssi/common/error.hpp"

namespace ssi::ledger {

namespace {

template <typename Map>
const auto& find_or_throw(const Map& m, const std::string& key, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) throw Error(ErrorCode::NotFound, std::string(what) + " " + key);
  return it->second;
}

}  // namespace

NymRecord LocalLedger::get_nym(const std::string& did) {
  return pool_->read([&](const LedgerState& s) { return find_or_throw(s.nyms, did, "nym"); });
}

SchemaRecord LocalLedger::get_schema(const std::string& id) {
  return pool_->read([&](const LedgerState& s) { return find_or_throw(s.schemas, id, "schema"); });
}

CredDefRecord LocalLedger::get_cred_def(const std::string& id) {
  return pool_->read([&](const LedgerState& s) { return find_or_throw(s.cred_defs, id, "cred def"); });
}

RevRegDefRecord LocalLedger::get_rev_reg_def(const std::string& id) {
  return pool_->read([&](const LedgerState& s) { return find_or_throw(s.rev_reg_defs, id, "rev reg def"); });
}

RevRegState LocalLedger::get_rev_reg(const std::string& id, std::optional<std::int64_t> at_time) {
  return pool_->read([&](const LedgerState& s) { return rev_reg_at(s, id, at_time); });
}

Json LocalLedger::get_config(const std::string& key) {
  return pool_->read([&](const LedgerState& s) { return find_or_throw(s.config, key, "config key"); });
}

std::int64_t replay_window_ms(LedgerClient& ledger) {
  try {
    return ledger.get_config("replayWindowMs").get<std::int64_t>();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFound) throw;
    return kDefaultReplayWindowMs;
  }
}

}  // namespace ssi::ledger
