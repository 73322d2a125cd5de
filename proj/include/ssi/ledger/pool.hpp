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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ssi/common/clock.hpp"
#include "ssi/ledger/genesis.hpp"
#include "ssi/ledger/node.hpp"

namespace ssi::ledger {

inline constexpr std::int64_t kDefaultReplayWindowMs = 120'000;

/// In-memory delivery between the leader and validators. Stopped nodes and
/// the drop predicate model crashed or partitioned replicas.
class MessageBus {
 public:
  enum class Phase { Prepare, Commit };
  using DropPredicate = std::function<bool(std::size_t node, Phase phase)>;

  explicit MessageBus(std::size_t nodes) : stopped_(nodes, false) {}

  void set_stopped(std::size_t node, bool stopped);
  bool stopped(std::size_t node) const;
  void set_drop(DropPredicate drop);
  bool deliverable(std::size_t node, Phase phase) const;

 private:
  mutable std::mutex mu_;
  std::vector<bool> stopped_;
  DropPredicate drop_;
};

struct BootstrapOptions {
  std::vector<GenesisNym> nyms;
  std::map<std::string, Json> config{{"replayWindowMs", kDefaultReplayWindowMs}};
  std::shared_ptr<const Clock> clock = system_clock();
};

/// N = 3f+1 in-process validators. Node 0 is the fixed leader: it orders
/// requests and commits once 2f+1 validators (itself included) have signed an
/// ack. Leader failure is not handled; with node 0 stopped every write fails.
class LedgerPool {
 public:
  static std::shared_ptr<LedgerPool> bootstrap(const GenesisConfig& genesis,
                                               const std::map<std::string, crypto::KeyPair>& node_keys,
                                               BootstrapOptions options = {});

  /// Throws Unauthorized, InvalidSignature, DuplicateRequest, InvalidTransaction
  /// (leader-side validation) or NoConsensus.
  Receipt submit(const Transaction& request);

  std::size_t size() const { return nodes_.size(); }
  std::size_t max_faulty() const { return ledger::max_faulty(nodes_.size()); }
  std::size_t quorum() const { return 2 * max_faulty() + 1; }

  void stop_node(std::size_t index);
  void start_node(std::size_t index);
  bool running(std::size_t index) const { return !bus_.stopped(index); }
  MessageBus& bus() { return bus_; }

  const ValidatorNode& node(std::size_t index) const { return *nodes_.at(index); }
  const GenesisConfig& genesis() const { return genesis_; }
  std::uint64_t genesis_size() const { return genesis_size_; }

  /// Runs \p f against the state of the first live node (or \p index).
  template <typename F>
  auto read(F&& f, std::optional<std::size_t> index = std::nullopt) const {
    return nodes_.at(index.value_or(first_live()))->read(std::forward<F>(f));
  }

  std::vector<Transaction> audit_log(std::optional<std::size_t> index = std::nullopt) const;
  LedgerState snapshot(std::optional<std::size_t> index = std::nullopt) const;

 private:
  LedgerPool(GenesisConfig genesis, std::shared_ptr<const Clock> clock);
  std::size_t first_live() const;

  GenesisConfig genesis_;
  std::shared_ptr<const Clock> clock_;
  std::vector<std::unique_ptr<ValidatorNode>> nodes_;
  MessageBus bus_;
  std::uint64_t genesis_size_ = 0;
  std::mutex submit_mu_;
  std::int64_t last_txn_time_ = 0;
};

}  // namespace ssi::ledger
