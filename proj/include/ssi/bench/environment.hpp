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

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssi/agent/agent.hpp"
#include "ssi/ledger/genesis.hpp"
#include "ssi/ledger/http_ledger.hpp"
#include "ssi/ledger/pool.hpp"

namespace ssi::bench {

struct AgentSpec {
  std::string label;
  std::string role;  // steward | issuer | holder | verifier
  int admin_port = 0;
  int inbound_port = 0;
  bool auto_accept = false;
  bool auto_verify = true;
};

struct EnvironmentSpec {
  ledger::GenesisConfig genesis;
  crypto::Seed steward_seed{};
  std::string host = "127.0.0.1";
  /// HTTP port for the ledger; -1 keeps it in-process only.
  int ledger_port = -1;
  /// Use a ledger served elsewhere instead of bootstrapping one.
  std::string attach_url;
  std::vector<AgentSpec> agents;
  std::size_t agent_workers = 4;
  std::chrono::milliseconds wait_timeout = std::chrono::seconds(30);
  std::shared_ptr<const Clock> clock = system_clock();
  /// Runs on each agent before it starts listening (e.g. to mount routes).
  std::function<void(agent::Agent&, const AgentSpec&)> before_start;
};

/// Four fixture nodes plus steward, issuer, auto-accepting holder and
/// verifier, all on ephemeral loopback ports.
EnvironmentSpec default_spec();

/// A ledger (bootstrapped here or attached) and the agents of a scenario,
/// all served from this process.
class Environment {
 public:
  /// Throws InvalidGenesis/InsufficientNodes, IoError on a port conflict.
  static std::unique_ptr<Environment> start(EnvironmentSpec spec);
  ~Environment();

  /// Steward connects to every issuer and verifier and enrolls it as ENDORSER.
  void enroll_endorsers();

  agent::Agent& agent(const std::string& label);
  agent::Agent& steward();
  /// First agent with this role; throws NotFound.
  agent::Agent& by_role(const std::string& role);
  std::vector<std::string> labels() const;

  /// Null when attached to an external ledger.
  const std::shared_ptr<ledger::LedgerPool>& pool() const { return pool_; }
  const std::shared_ptr<ledger::LedgerClient>& ledger() const { return ledger_; }
  std::string ledger_url() const;
  const EnvironmentSpec& spec() const { return spec_; }
  std::string steward_did() const;

  void stop();

 private:
  explicit Environment(EnvironmentSpec spec) : spec_(std::move(spec)) {}

  EnvironmentSpec spec_;
  std::shared_ptr<ledger::LedgerPool> pool_;
  std::unique_ptr<ledger::LedgerHttpServer> server_;
  std::shared_ptr<ledger::LedgerClient> ledger_;
  std::map<std::string, std::unique_ptr<agent::Agent>> agents_;
  std::vector<std::string> order_;
};

}  // namespace ssi::bench
