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
#include <string>
#include <thread>

#include "ssi/ledger/client.hpp"

namespace httplib {
class Server;
}

namespace ssi::ledger {

/// Serves a pool's read and write paths over HTTP so agents in other
/// processes can attach to it.
class LedgerHttpServer {
 public:
  explicit LedgerHttpServer(std::shared_ptr<LedgerPool> pool);
  ~LedgerHttpServer();
  LedgerHttpServer(const LedgerHttpServer&) = delete;
  LedgerHttpServer& operator=(const LedgerHttpServer&) = delete;

  /// Binds and starts serving on a background thread. Port 0 picks a free
  /// port. Throws IoError if the port is taken.
  int start(const std::string& host, int port);
  void stop();
  std::string url() const;

 private:
  std::shared_ptr<LedgerPool> pool_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

class HttpLedger final : public LedgerClient {
 public:
  explicit HttpLedger(std::string base_url) : base_(std::move(base_url)) {}

  Receipt submit(const Transaction& request) override;
  NymRecord get_nym(const std::string& did) override;
  SchemaRecord get_schema(const std::string& id) override;
  CredDefRecord get_cred_def(const std::string& id) override;
  RevRegDefRecord get_rev_reg_def(const std::string& id) override;
  RevRegState get_rev_reg(const std::string& id, std::optional<std::int64_t> at_time) override;
  Json get_config(const std::string& key) override;
  std::vector<Transaction> audit_log() override;

 private:
  std::string base_;
};

}  // namespace ssi::ledger
