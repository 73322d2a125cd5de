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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssi/ledger/pool.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::ledger {

/// What agents see of the ledger: permissioned writes, permissionless reads.
/// All reads throw NotFound for unknown identifiers.
class LedgerClient {
 public:
  virtual ~LedgerClient() = default;

  virtual Receipt submit(const Transaction& request) = 0;
  virtual NymRecord get_nym(const std::string& did) = 0;
  virtual SchemaRecord get_schema(const std::string& id) = 0;
  virtual CredDefRecord get_cred_def(const std::string& id) = 0;
  virtual RevRegDefRecord get_rev_reg_def(const std::string& id) = 0;
  virtual RevRegState get_rev_reg(const std::string& id, std::optional<std::int64_t> at_time = std::nullopt) = 0;
  virtual Json get_config(const std::string& key) = 0;
  virtual std::vector<Transaction> audit_log() = 0;
};

class LocalLedger final : public LedgerClient {
 public:
  explicit LocalLedger(std::shared_ptr<LedgerPool> pool) : pool_(std::move(pool)) {}

  Receipt submit(const Transaction& request) override { return pool_->submit(request); }
  NymRecord get_nym(const std::string& did) override;
  SchemaRecord get_schema(const std::string& id) override;
  CredDefRecord get_cred_def(const std::string& id) override;
  RevRegDefRecord get_rev_reg_def(const std::string& id) override;
  RevRegState get_rev_reg(const std::string& id, std::optional<std::int64_t> at_time) override;
  Json get_config(const std::string& key) override;
  std::vector<Transaction> audit_log() override { return pool_->audit_log(); }

  const std::shared_ptr<LedgerPool>& pool() const { return pool_; }

 private:
  std::shared_ptr<LedgerPool> pool_;
};

/// Replay window from the config sub-ledger, falling back to the default.
std::int64_t replay_window_ms(LedgerClient& ledger);

}  // namespace ssi::ledger
