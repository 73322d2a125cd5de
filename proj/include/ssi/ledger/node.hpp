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

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "ssi/crypto/keys.hpp"
#include "ssi/ledger/genesis.hpp"
#include "ssi/ledger/state.hpp"

namespace ssi::ledger {

/// Bytes a validator signs to acknowledge a proposed entry.
Digest ack_digest(std::uint64_t seq_no, const Digest& txn_hash);

/// One validator. Messages are handled one at a time under the node lock, so
/// the node behaves as a single-threaded state machine over its inbox.
class ValidatorNode {
 public:
  ValidatorNode(GenesisNode info, crypto::KeyPair keys);

  const GenesisNode& info() const { return info_; }
  std::string did() const { return crypto::did_from_key(keys_.public_key); }

  /// Genesis entries are trusted as given.
  void load_genesis(std::span<const Transaction> entries);

  /// Independently validates a proposed entry. Returns the node's signed ack,
  /// or nullopt when the node refuses it.
  std::optional<crypto::Signature> on_prepare(const Transaction& txn);
  void on_commit(const Transaction& txn);
  void on_abort(std::uint64_t seq_no);

  /// Appends committed entries the node missed while stopped; the chain must
  /// link onto the local head.
  void catch_up(std::span<const Transaction> entries);

  std::uint64_t height() const;

  template <typename F>
  auto read(F&& f) const {
    std::lock_guard lock(mu_);
    return f(state_);
  }

 private:
  GenesisNode info_;
  crypto::KeyPair keys_;
  mutable std::mutex mu_;
  LedgerState state_;
  std::optional<Transaction> pending_;
};

}  // namespace ssi::ledger
