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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ssi/bench/environment.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::cli {

struct AgentConfig {
  std::string label;
  std::string role;  // steward | issuer | holder | verifier
  std::string endpoint = "127.0.0.1";
  int port = 0;  // admin API; the inbound transport listens on port + 1
};

struct SchemaFixture {
  std::string name;
  std::string version;
  std::vector<std::string> attr_names;
  std::map<std::string, std::string> sample;
};

struct ScenarioConfig {
  std::filesystem::path path;
  std::filesystem::path genesis_path;
  crypto::Seed steward_seed{};
  int ledger_port = 0;
  std::vector<AgentConfig> agents;
  std::vector<SchemaFixture> schemas;
  std::filesystem::path authz_rules_path;

  /// Throw NotFound.
  const AgentConfig& agent(const std::string& label) const;
  const AgentConfig& by_role(const std::string& role) const;
  const SchemaFixture& schema(const std::string& name) const;
};

/// $SSI_CONFIG, else the bundled fixtures/config.json.
std::filesystem::path default_config_path();

/// Relative paths resolve against \p base_dir. Throws Malformed.
ScenarioConfig parse_config(const Json& j, const std::filesystem::path& base_dir);

/// Reads, applies environment overrides and validates. Throws IoError or
/// Malformed.
ScenarioConfig load_config(const std::filesystem::path& path);

/// SSI_PORT_OFFSET shifts every fixed port; SSI_EPHEMERAL_PORTS=1 replaces
/// them all with 0 so the OS picks.
void apply_env_overrides(ScenarioConfig& c);

/// Exactly one steward, known roles, no two listeners on the same port.
/// Throws Malformed.
void validate(const ScenarioConfig& c);

inline int inbound_port(const AgentConfig& a) { return a.port == 0 ? 0 : a.port + 1; }

/// Loads the genesis file (InvalidGenesis) and maps agents one to one.
bench::EnvironmentSpec environment_spec(const ScenarioConfig& c);

}  // namespace ssi::cli
