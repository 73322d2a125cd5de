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
#include "ssi/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"

namespace ssi::cli {
namespace {

const std::set<std::string> kRoles{"steward", "issuer", "holder", "verifier"};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_file(const std::filesystem::path& p) {
  try {
    return Json::parse(read_file(p));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, p.string() + ": " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

crypto::Seed parse_seed(const std::string& s) {
  // 64 hex digits are taken as the raw seed, anything else as a fixture label
  if (s.size() == 64 && s.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos) {
    return encoding::to_array<32>(encoding::from_hex(s));
  }
  if (s.empty()) throw Error(ErrorCode::Malformed, "stewardSeed is empty");
  return crypto::seed_from_label(s);
}

SchemaFixture parse_schema(const std::filesystem::path& p) {
  const auto j = parse_file(p);
  try {
    SchemaFixture f;
    f.name = j.at("name").get<std::string>();
    f.version = j.at("version").get<std::string>();
    f.attr_names = j.at("attrNames").get<std::vector<std::string>>();
    if (j.contains("sample")) f.sample = j.at("sample").get<std::map<std::string, std::string>>();
    return f;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, p.string() + ": " + e.what());
  }
}

template <typename T, typename Pred>
const T& find_one(const std::vector<T>& xs, Pred pred, const std::string& what) {
  for (const auto& x : xs) {
    if (pred(x)) return x;
  }
  throw Error(ErrorCode::NotFound, "no " + what + " in config");
}

}  // namespace

const AgentConfig& ScenarioConfig::agent(const std::string& label) const {
  return find_one(agents, [&](const AgentConfig& a) { return a.label == label; }, "agent " + label);
}

const AgentConfig& ScenarioConfig::by_role(const std::string& role) const {
  return find_one(agents, [&](const AgentConfig& a) { return a.role == role; }, "agent with role " + role);
}

const SchemaFixture& ScenarioConfig::schema(const std::string& name) const {
  return find_one(schemas, [&](const SchemaFixture& s) { return s.name == name; }, "schema " + name);
}

std::filesystem::path default_config_path() {
  if (const char* env = std::getenv("SSI_CONFIG"); env && *env) return env;
  return std::filesystem::path(SSI_FIXTURES_DIR) / "config.json";
}

ScenarioConfig parse_config(const Json& j, const std::filesystem::path& base_dir) {
  ScenarioConfig c;
  try {
    c.genesis_path = resolve(base_dir, j.at("genesisPath").get<std::string>());
    c.steward_seed = parse_seed(j.value("stewardSeed", std::string("Steward1")));
    c.ledger_port = j.value("ledgerPort", 0);
    for (const auto& a : j.at("agents")) {
      AgentConfig ac;
      ac.label = a.at("label").get<std::string>();
      ac.role = a.at("role").get<std::string>();
      ac.endpoint = a.value("endpoint", ac.endpoint);
      ac.port = a.value("port", 0);
      c.agents.push_back(ac);
    }
    for (const auto& s : j.value("schemas", Json::array())) {
      c.schemas.push_back(parse_schema(resolve(base_dir, s.get<std::string>())));
    }
    if (j.contains("authzRulesPath")) c.authz_rules_path = resolve(base_dir, j.at("authzRulesPath").get<std::string>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(ErrorCode::Malformed, e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  auto c = parse_config(parse_file(path), path.parent_path());
  c.path = path;
  apply_env_overrides(c);
  validate(c);
  return c;
}

void apply_env_overrides(ScenarioConfig& c) {
  const char* eph = std::getenv("SSI_EPHEMERAL_PORTS");
  if (eph && std::string(eph) == "1") {
    c.ledger_port = 0;
    for (auto& a : c.agents) a.port = 0;
    return;
  }
  const char* off = std::getenv("SSI_PORT_OFFSET");
  if (!off || !*off) return;
  int offset = 0;
  try {
    offset = std::stoi(off);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Malformed, std::string("SSI_PORT_OFFSET is not a number: ") + off);
  }
  if (c.ledger_port > 0) c.ledger_port += offset;
  for (auto& a : c.agents) {
    if (a.port > 0) a.port += offset;
  }
}

void validate(const ScenarioConfig& c) {
  std::size_t stewards = 0;
  std::set<std::string> labels;
  std::set<int> ports;
  auto claim = [&](int port, const std::string& who) {
    if (port == 0) return;
    if (port < 0 || port > 65535) throw Error(ErrorCode::Malformed, who + ": port out of range");
    if (!ports.insert(port).second) throw Error(ErrorCode::Malformed, who + ": port " + std::to_string(port) + " used twice");
  };
  claim(c.ledger_port, "ledger");
  for (const auto& a : c.agents) {
    if (!kRoles.contains(a.role)) throw Error(ErrorCode::Malformed, a.label + ": unknown role " + a.role);
    if (!labels.insert(a.label).second) throw Error(ErrorCode::Malformed, "duplicate agent label " + a.label);
    if (a.role == "steward") ++stewards;
    claim(a.port, a.label);
    claim(inbound_port(a), a.label + " inbound");
  }
  if (stewards != 1) throw Error(ErrorCode::Malformed, "config needs exactly one steward, found " + std::to_string(stewards));
}

bench::EnvironmentSpec environment_spec(const ScenarioConfig& c) {
  bench::EnvironmentSpec s;
  s.genesis = ledger::load_genesis(c.genesis_path);
  s.steward_seed = c.steward_seed;
  s.ledger_port = c.ledger_port;
  for (const auto& a : c.agents) {
    bench::AgentSpec as;
    as.label = a.label;
    as.role = a.role;
    as.admin_port = a.port;
    as.inbound_port = inbound_port(a);
    s.agents.push_back(as);
  }
  if (!c.agents.empty()) s.host = c.agents.front().endpoint;
  return s;
}

}  // namespace ssi::cli
