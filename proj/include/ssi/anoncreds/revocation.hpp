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

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "ssi/common/json_util.hpp"
#include "ssi/crypto/commitment.hpp"
#include "ssi/crypto/merkle.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::anoncreds {

inline constexpr std::uint32_t kDefaultMaxCredNum = 1024;

/// H(0x04 || salt || u32 index || status), status 0x00 active, 0x01 revoked.
Digest revocation_leaf(const crypto::Salt& salt, std::uint32_t index, bool revoked);

/// Ledger write produced by a revocation.
struct RevRegDelta {
  std::string rev_reg_id;
  Digest accumulator{};
  std::set<std::uint32_t> revoked;
};

Json rev_reg_entry_payload(const RevRegDelta& delta);

/// Issuer-side registry. Not synchronized; callers serialize per registry.
class RevocationRegistry {
 public:
  /// Throws InvalidArgument unless max_cred_num is a power of two.
  RevocationRegistry(std::string id, std::string cred_def_id, std::uint32_t max_cred_num, const crypto::Salt& salt);
  static RevocationRegistry create(std::string id, std::string cred_def_id,
                                   std::uint32_t max_cred_num = kDefaultMaxCredNum);

  const std::string& id() const { return id_; }
  const std::string& cred_def_id() const { return cred_def_id_; }
  std::uint32_t max_cred_num() const { return max_cred_num_; }
  const crypto::Salt& salt() const { return salt_; }
  const Digest& accumulator() const { return tree_.root(); }
  const std::set<std::uint32_t>& issued() const { return issued_; }
  const std::set<std::uint32_t>& revoked() const { return revoked_; }
  const std::set<std::uint32_t>& pending() const { return pending_; }

  /// Lowest free index. Throws RegistryFull.
  std::uint32_t allocate();
  /// Throws NotIssued or AlreadyRevoked.
  RevRegDelta revoke(std::uint32_t index);
  /// Called once the delta is on the ledger.
  void clear_pending() { pending_.clear(); }

  crypto::MerkleProof witness(std::uint32_t index) const { return tree_.prove(index); }

  /// Ledger payload for REV_REG_DEF; accumulator is the all-active root.
  Json def_payload(const std::string& tag) const;

  Json to_json() const;
  static RevocationRegistry from_json(const Json& j);

 private:
  std::string id_;
  std::string cred_def_id_;
  std::uint32_t max_cred_num_;
  crypto::Salt salt_;
  std::set<std::uint32_t> issued_, revoked_, pending_;
  crypto::MerkleTree tree_;
};

/// Holder's membership witness: leaf(revIndex, active) under a published
/// accumulator value.
struct NonRevocationProof {
  std::uint32_t rev_index = 0;
  crypto::MerkleProof proof;
  Digest accumulator{};
  std::uint64_t accumulator_seq_no = 0;
};

Json to_json(const NonRevocationProof& p);
NonRevocationProof non_revocation_from_json(const Json& j);

/// Public registry data a holder needs to build a witness.
struct RevocationSnapshot {
  ledger::RevRegDefRecord def;
  ledger::RevRegState state;
};

/// Rebuilds the witness from the registry salt and the published revoked set.
/// Throws CredentialRevoked if \p rev_index is revoked, Malformed if the
/// published accumulator does not match the revoked set.
NonRevocationProof refresh_witness(const RevocationSnapshot& snapshot, std::uint32_t rev_index);

}  // namespace ssi::anoncreds
