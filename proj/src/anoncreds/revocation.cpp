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
#include "ssi/anoncreds/revocation.hpp"

#include <bit>

#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::anoncreds {

Digest revocation_leaf(const crypto::Salt& salt, std::uint32_t index, bool revoked) {
  Bytes buf;
  append(buf, salt);
  append_u32(buf, index);
  append_u8(buf, revoked ? 0x01 : 0x00);
  return crypto::tagged_hash(crypto::Domain::RevocationLeaf, buf);
}

namespace {

std::vector<Digest> status_leaves(const crypto::Salt& salt, std::uint32_t max, const std::set<std::uint32_t>& revoked) {
  std::vector<Digest> leaves;
  leaves.reserve(max);
  for (std::uint32_t i = 0; i < max; ++i) leaves.push_back(revocation_leaf(salt, i, revoked.contains(i)));
  return leaves;
}

std::uint32_t checked_max(std::uint32_t max) {
  if (max == 0 || !std::has_single_bit(max)) throw Error(ErrorCode::InvalidArgument, "maxCredNum must be a power of two");
  return max;
}

}  // namespace

Json rev_reg_entry_payload(const RevRegDelta& d) {
  return {{"revRegId", d.rev_reg_id}, {"accumulator", bytes_json(d.accumulator)}, {"revokedIndices", d.revoked}};
}

RevocationRegistry::RevocationRegistry(std::string id, std::string cred_def_id, std::uint32_t max_cred_num,
                                       const crypto::Salt& salt)
    : id_(std::move(id)),
      cred_def_id_(std::move(cred_def_id)),
      max_cred_num_(checked_max(max_cred_num)),
      salt_(salt),
      tree_(status_leaves(salt, max_cred_num, {})) {}

RevocationRegistry RevocationRegistry::create(std::string id, std::string cred_def_id, std::uint32_t max_cred_num) {
  return RevocationRegistry(std::move(id), std::move(cred_def_id), max_cred_num, crypto::random_salt());
}

std::uint32_t RevocationRegistry::allocate() {
  for (std::uint32_t i = 0; i < max_cred_num_; ++i) {
    if (!issued_.contains(i)) {
      issued_.insert(i);
      return i;
    }
  }
  throw Error(ErrorCode::RegistryFull, "all " + std::to_string(max_cred_num_) + " indices issued");
}

RevRegDelta RevocationRegistry::revoke(std::uint32_t index) {
  if (!issued_.contains(index)) throw Error(ErrorCode::NotIssued, "index " + std::to_string(index) + " not issued");
  if (revoked_.contains(index)) throw Error(ErrorCode::AlreadyRevoked, "index " + std::to_string(index));
  revoked_.insert(index);
  pending_.insert(index);
  tree_.update(index, revocation_leaf(salt_, index, true));
  return {id_, tree_.root(), revoked_};
}

Json RevocationRegistry::def_payload(const std::string& tag) const {
  return {{"credDefId", cred_def_id_},
          {"tag", tag},
          {"maxCredNum", max_cred_num_},
          {"salt", bytes_json(salt_)},
          {"initialAccumulator", bytes_json(crypto::merkle_root(status_leaves(salt_, max_cred_num_, {})))}};
}

Json RevocationRegistry::to_json() const {
  return {{"id", id_},          {"credDefId", cred_def_id_}, {"maxCredNum", max_cred_num_},
          {"salt", bytes_json(salt_)}, {"issued", issued_},          {"revoked", revoked_},
          {"pending", pending_}};
}

RevocationRegistry RevocationRegistry::from_json(const Json& j) {
  RevocationRegistry r(j.at("id").get<std::string>(), j.at("credDefId").get<std::string>(),
                       j.at("maxCredNum").get<std::uint32_t>(), json_array<16>(j.at("salt")));
  r.issued_ = j.at("issued").get<std::set<std::uint32_t>>();
  r.revoked_ = j.at("revoked").get<std::set<std::uint32_t>>();
  r.pending_ = j.at("pending").get<std::set<std::uint32_t>>();
  r.tree_ = crypto::MerkleTree(status_leaves(r.salt_, r.max_cred_num_, r.revoked_));
  return r;
}

Json to_json(const NonRevocationProof& p) {
  return {{"revIndex", p.rev_index},
          {"proof", crypto::to_json(p.proof)},
          {"accumulator", bytes_json(p.accumulator)},
          {"accumulatorSeqNo", p.accumulator_seq_no}};
}

NonRevocationProof non_revocation_from_json(const Json& j) {
  return {j.at("revIndex").get<std::uint32_t>(), crypto::merkle_proof_from_json(j.at("proof")),
          json_array<32>(j.at("accumulator")), j.at("accumulatorSeqNo").get<std::uint64_t>()};
}

NonRevocationProof refresh_witness(const RevocationSnapshot& s, std::uint32_t rev_index) {
  if (rev_index >= s.def.max_cred_num) throw Error(ErrorCode::InvalidArgument, "revIndex outside registry");
  if (s.state.revoked.contains(rev_index)) {
    throw Error(ErrorCode::CredentialRevoked, "index " + std::to_string(rev_index) + " revoked in " + s.def.id);
  }
  const crypto::MerkleTree tree(status_leaves(s.def.salt, s.def.max_cred_num, s.state.revoked));
  if (tree.root() != s.state.accumulator) throw Error(ErrorCode::Malformed, "published accumulator does not match revoked set");
  return {rev_index, tree.prove(rev_index), tree.root(), s.state.seq_no};
}

}  // namespace ssi::anoncreds
