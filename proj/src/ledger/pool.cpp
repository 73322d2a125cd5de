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
#include "ssi/ledger/pool.hpp"

#include <algorithm>

#include "ssi/common/error.hpp"

namespace ssi::ledger {

void MessageBus::set_stopped(std::size_t node, bool stopped) {
  std::lock_guard lock(mu_);
  stopped_.at(node) = stopped;
}

bool MessageBus::stopped(std::size_t node) const {
  std::lock_guard lock(mu_);
  return stopped_.at(node);
}

void MessageBus::set_drop(DropPredicate drop) {
  std::lock_guard lock(mu_);
  drop_ = std::move(drop);
}

bool MessageBus::deliverable(std::size_t node, Phase phase) const {
  std::lock_guard lock(mu_);
  if (stopped_.at(node)) return false;
  return !(drop_ && drop_(node, phase));
}

LedgerPool::LedgerPool(GenesisConfig genesis, std::shared_ptr<const Clock> clock)
    : genesis_(std::move(genesis)), clock_(std::move(clock)), bus_(genesis_.nodes.size()) {}

std::shared_ptr<LedgerPool> LedgerPool::bootstrap(const GenesisConfig& genesis,
                                                  const std::map<std::string, crypto::KeyPair>& node_keys,
                                                  BootstrapOptions options) {
  validate_genesis(genesis);
  std::shared_ptr<LedgerPool> pool(new LedgerPool(genesis, options.clock));

  for (const auto& info : genesis.nodes) {
    auto it = node_keys.find(info.alias);
    if (it == node_keys.end() || it->second.public_key != info.node_verkey) {
      throw Error(ErrorCode::InvalidGenesis, "no matching key for node " + info.alias);
    }
    pool->nodes_.push_back(std::make_unique<ValidatorNode>(info, it->second));
  }

  // Genesis batch: NODE records, config parameters, then trustee/steward NYMs.
  std::vector<Transaction> batch;
  const auto now = pool->clock_->now_ms();
  auto push = [&](TxnKind kind, Json payload, const crypto::KeyPair& author) {
    Transaction t;
    t.kind = kind;
    t.payload = std::move(payload);
    t.author_did = crypto::did_from_key(author.public_key);
    t.req_id = batch.size() + 1;
    t.signature = crypto::sign(author, signing_bytes(t));
    t.seq_no = batch.size() + 1;
    t.txn_time = now;
    t.prev_hash = batch.empty() ? Digest{} : txn_hash(batch.back());
    batch.push_back(std::move(t));
  };
  const auto& leader_keys = node_keys.at(genesis.nodes.front().alias);
  for (const auto& info : genesis.nodes) {
    push(TxnKind::Node,
         {{"alias", info.alias},
          {"nodeVerkey", crypto::verkey_string(info.node_verkey)},
          {"endpoint", info.endpoint},
          {"services", info.services}},
         node_keys.at(info.alias));
  }
  for (const auto& [key, value] : options.config) push(TxnKind::Config, {{"key", key}, {"value", value}}, leader_keys);
  for (const auto& nym : options.nyms) {
    push(TxnKind::Nym,
         {{"dest", nym.did}, {"verkey", crypto::verkey_string(nym.verkey)}, {"role", to_string(nym.role)}},
         leader_keys);
  }
  for (auto& node : pool->nodes_) node->load_genesis(batch);
  pool->genesis_size_ = batch.size();
  pool->last_txn_time_ = now;
  return pool;
}

Receipt LedgerPool::submit(const Transaction& request) {
  std::lock_guard lock(submit_mu_);
  if (bus_.stopped(0)) throw Error(ErrorCode::NoConsensus, "leader node is not running");

  auto& leader = *nodes_[0];
  Transaction txn = request;
  leader.read([&](const LedgerState& s) {
    validate_request(s, txn);
    txn.seq_no = s.height() + 1;
    txn.prev_hash = s.head_hash();
    return 0;
  });
  last_txn_time_ = std::max(clock_->now_ms(), last_txn_time_ + 1);
  txn.txn_time = last_txn_time_;
  const Digest digest = ack_digest(txn.seq_no, txn_hash(txn));

  std::vector<std::size_t> acked;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!bus_.deliverable(i, MessageBus::Phase::Prepare)) continue;
    if (nodes_[i]->height() + 1 < txn.seq_no) nodes_[i]->catch_up(audit_log(0));
    auto ack = nodes_[i]->on_prepare(txn);
    if (ack && crypto::verify(genesis_.nodes[i].node_verkey, digest, *ack)) acked.push_back(i);
  }

  if (acked.size() < quorum() || std::find(acked.begin(), acked.end(), 0) == acked.end()) {
    for (auto i : acked) nodes_[i]->on_abort(txn.seq_no);
    throw Error(ErrorCode::NoConsensus, std::to_string(acked.size()) + " of " + std::to_string(nodes_.size()) +
                                            " acks, need " + std::to_string(quorum()));
  }

  // Commit reaches every running node; replicas that missed the prepare
  // catch up from the leader first.
  leader.on_commit(txn);
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (bus_.stopped(i)) continue;
    if (nodes_[i]->height() + 1 != txn.seq_no) nodes_[i]->catch_up(audit_log(0));
    else nodes_[i]->on_commit(txn);
  }
  return Receipt{txn.seq_no, txn.txn_time, txn_hash(txn)};
}

void LedgerPool::stop_node(std::size_t index) { bus_.set_stopped(index, true); }

void LedgerPool::start_node(std::size_t index) {
  std::lock_guard lock(submit_mu_);
  bus_.set_stopped(index, false);
  if (index != 0 && !bus_.stopped(0)) nodes_.at(index)->catch_up(audit_log(0));
}

std::size_t LedgerPool::first_live() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!bus_.stopped(i)) return i;
  }
  throw Error(ErrorCode::TransportError, "no validator node is running");
}

std::vector<Transaction> LedgerPool::audit_log(std::optional<std::size_t> index) const {
  return read([](const LedgerState& s) { return s.audit; }, index);
}

LedgerState LedgerPool::snapshot(std::optional<std::size_t> index) const {
  return read([](const LedgerState& s) { return s; }, index);
}

}  // namespace ssi::ledger
