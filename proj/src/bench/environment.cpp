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
#include "ssi/bench/environment.hpp"

#include "ssi/common/error.hpp"

namespace ssi::bench {

EnvironmentSpec default_spec() {
  EnvironmentSpec s;
  for (int i = 1; i <= 4; ++i) {
    const auto alias = "Node" + std::to_string(i);
    s.genesis.nodes.push_back(
        {alias, ledger::fixture_node_keys(alias).public_key, "127.0.0.1:" + std::to_string(9699 + 2 * i)});
  }
  s.steward_seed = crypto::seed_from_label("Steward1");
  s.agents = {{"steward", "steward"}, {"issuer", "issuer"}, {"holder", "holder", 0, 0, true, true}, {"verifier", "verifier"}};
  return s;
}

std::unique_ptr<Environment> Environment::start(EnvironmentSpec spec) {
  std::unique_ptr<Environment> env(new Environment(std::move(spec)));
  auto& s = env->spec_;
  const auto steward_keys = crypto::generate_keypair(s.steward_seed);
  if (s.attach_url.empty()) {
    std::map<std::string, crypto::KeyPair> node_keys;
    for (const auto& n : s.genesis.nodes) node_keys[n.alias] = ledger::fixture_node_keys(n.alias);
    ledger::BootstrapOptions opts;
    opts.clock = s.clock;
    opts.nyms.push_back({crypto::did_from_key(steward_keys.public_key), steward_keys.public_key, ledger::Role::Steward});
    env->pool_ = ledger::LedgerPool::bootstrap(s.genesis, node_keys, opts);
    env->ledger_ = std::make_shared<ledger::LocalLedger>(env->pool_);
    if (s.ledger_port >= 0) {
      env->server_ = std::make_unique<ledger::LedgerHttpServer>(env->pool_);
      env->server_->start(s.host, s.ledger_port);
    }
  } else {
    env->ledger_ = std::make_shared<ledger::HttpLedger>(s.attach_url);
  }

  for (const auto& a : s.agents) {
    if (env->agents_.contains(a.label)) throw Error(ErrorCode::InvalidArgument, "duplicate agent label " + a.label);
    agent::AgentOptions o;
    o.label = a.label;
    o.host = s.host;
    o.admin_port = a.admin_port;
    o.inbound_port = a.inbound_port;
    o.auto_accept = a.auto_accept;
    o.auto_verify = a.auto_verify;
    o.workers = s.agent_workers;
    o.clock = s.clock;
    o.wait_timeout = s.wait_timeout;
    if (a.role == "steward") o.public_seed = s.steward_seed;
    auto ag = std::make_unique<agent::Agent>(o, env->ledger_);
    if (s.before_start) s.before_start(*ag, a);
    ag->start();
    env->order_.push_back(a.label);
    env->agents_.emplace(a.label, std::move(ag));
  }
  return env;
}

Environment::~Environment() { stop(); }

void Environment::stop() {
  for (auto& [label, a] : agents_) a->stop();
  if (server_) server_->stop();
}

void Environment::enroll_endorsers() {
  auto& s = steward();
  for (const auto& spec : spec_.agents) {
    if (spec.role != "issuer" && spec.role != "verifier") continue;
    auto& a = agent(spec.label);
    if (!a.public_did().empty()) continue;
    const auto inv = s.create_invitation();
    a.receive_invitation(inv.url, true, true);
    s.wait_connection(inv.conn_id);
    s.enroll(inv.conn_id, ledger::Role::Endorser);
  }
}

agent::Agent& Environment::agent(const std::string& label) {
  auto it = agents_.find(label);
  if (it == agents_.end()) throw Error(ErrorCode::NotFound, "no agent labelled " + label);
  return *it->second;
}

agent::Agent& Environment::steward() { return by_role("steward"); }

agent::Agent& Environment::by_role(const std::string& role) {
  for (const auto& a : spec_.agents) {
    if (a.role == role) return agent(a.label);
  }
  throw Error(ErrorCode::NotFound, "no agent with role " + role);
}

std::vector<std::string> Environment::labels() const { return order_; }

std::string Environment::ledger_url() const {
  if (!spec_.attach_url.empty()) return spec_.attach_url;
  return server_ ? server_->url() : std::string();
}

std::string Environment::steward_did() const {
  return crypto::did_from_key(crypto::generate_keypair(spec_.steward_seed).public_key);
}

}  // namespace ssi::bench
