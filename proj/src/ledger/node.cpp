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
#include "ssi/ledger/node.hpp"

#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::ledger {

Digest ack_digest(std::uint64_t seq_no, const Digest& txn_hash) {
  Bytes buf;
  append_u64(buf, seq_no);
  append(buf, txn_hash);
  return crypto::tagged_hash(crypto::Domain::NodeAck, buf);
}

ValidatorNode::ValidatorNode(GenesisNode info, crypto::KeyPair keys) : info_(std::move(info)), keys_(keys) {}

void ValidatorNode::load_genesis(std::span<const Transaction> entries) {
  std::lock_guard lock(mu_);
  for (const auto& t : entries) apply(state_, t);
}

std::optional<crypto::Signature> ValidatorNode::on_prepare(const Transaction& txn) {
  std::lock_guard lock(mu_);
  if (txn.seq_no != state_.height() + 1 || txn.prev_hash != state_.head_hash()) return std::nullopt;
  if (!state_.audit.empty() && txn.txn_time <= state_.audit.back().txn_time) return std::nullopt;
  try {
    validate_request(state_, txn);
  } catch (const Error&) {
    return std::nullopt;
  }
  pending_ = txn;
  return crypto::sign(keys_, ack_digest(txn.seq_no, txn_hash(txn)));
}

void ValidatorNode::on_commit(const Transaction& txn) {
  std::lock_guard lock(mu_);
  if (txn.seq_no != state_.height() + 1 || txn.prev_hash != state_.head_hash()) {
    throw Error(ErrorCode::InvalidState, info_.alias + " cannot commit seqNo " + std::to_string(txn.seq_no));
  }
  apply(state_, txn);
  pending_.reset();
}

void ValidatorNode::on_abort(std::uint64_t seq_no) {
  std::lock_guard lock(mu_);
  if (pending_ && pending_->seq_no == seq_no) pending_.reset();
}

void ValidatorNode::catch_up(std::span<const Transaction> entries) {
  std::lock_guard lock(mu_);
  for (const auto& t : entries) {
    if (t.seq_no <= state_.height()) continue;
    if (t.seq_no != state_.height() + 1 || t.prev_hash != state_.head_hash()) {
      throw Error(ErrorCode::CorruptLog, info_.alias + " catch-up does not link at seqNo " + std::to_string(t.seq_no));
    }
    apply(state_, t);
  }
  pending_.reset();
}

std::uint64_t ValidatorNode::height() const {
  std::lock_guard lock(mu_);
  return state_.height();
}

}  // namespace ssi::ledger
