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
#include "ssi/crypto/merkle.hpp"

#include <bit>

#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::crypto {

const Digest& merkle_pad() {
  static const Digest pad = sha256(as_bytes("EMPTY-LEAF"));
  return pad;
}

Digest merkle_node(const Digest& left, const Digest& right) {
  ByteArray<64> buf{};
  std::copy(left.begin(), left.end(), buf.begin());
  std::copy(right.begin(), right.end(), buf.begin() + 32);
  return tagged_hash(Domain::MerkleNode, buf);
}

std::size_t merkle_width(std::size_t leaf_count) {
  return std::max<std::size_t>(2, std::bit_ceil(leaf_count));
}

MerkleTree::MerkleTree(std::vector<Digest> leaves) : leaf_count_(leaves.size()) {
  if (leaves.empty()) throw Error(ErrorCode::EmptyTree, "merkle tree needs at least one leaf");
  leaves.resize(merkle_width(leaf_count_), merkle_pad());
  levels_.push_back(std::move(leaves));
  while (levels_.back().size() > 1) {
    const auto& below = levels_.back();
    std::vector<Digest> up(below.size() / 2);
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = merkle_node(below[2 * i], below[2 * i + 1]);
    levels_.push_back(std::move(up));
  }
}

const Digest& MerkleTree::leaf(std::size_t index) const {
  if (index >= leaf_count_) throw Error(ErrorCode::IndexError, "leaf index out of range");
  return levels_.front()[index];
}

void MerkleTree::update(std::size_t index, const Digest& leaf) {
  if (index >= leaf_count_) throw Error(ErrorCode::IndexError, "leaf index out of range");
  levels_[0][index] = leaf;
  for (std::size_t level = 1; level < levels_.size(); ++level) {
    index /= 2;
    levels_[level][index] = merkle_node(levels_[level - 1][2 * index], levels_[level - 1][2 * index + 1]);
  }
}

MerkleProof MerkleTree::prove(std::size_t index) const {
  if (index >= leaf_count_) throw Error(ErrorCode::IndexError, "leaf index out of range");
  MerkleProof proof{index, {}};
  for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
    const bool is_left = (index % 2) == 0;
    proof.path.push_back({levels_[level][is_left ? index + 1 : index - 1], is_left ? Side::Right : Side::Left});
    index /= 2;
  }
  return proof;
}

Digest merkle_root(std::span<const Digest> leaves) {
  return MerkleTree(std::vector<Digest>(leaves.begin(), leaves.end())).root();
}

MerkleProof merkle_prove(std::span<const Digest> leaves, std::size_t index) {
  if (leaves.empty()) throw Error(ErrorCode::EmptyTree, "merkle tree needs at least one leaf");
  if (index >= leaves.size()) throw Error(ErrorCode::IndexError, "leaf index out of range");
  return MerkleTree(std::vector<Digest>(leaves.begin(), leaves.end())).prove(index);
}

bool merkle_verify(const Digest& root, const Digest& leaf, const MerkleProof& proof) noexcept {
  if (proof.path.empty() || proof.path.size() >= 64) return false;
  // Sides are implied by the index bits; a proof whose sides disagree with its
  // index is rejected so that leaf_index is bound to the path.
  if ((proof.leaf_index >> proof.path.size()) != 0) return false;
  Digest acc = leaf;
  std::uint64_t index = proof.leaf_index;
  for (const auto& step : proof.path) {
    const Side expected = (index % 2 == 0) ? Side::Right : Side::Left;
    if (step.side != expected) return false;
    acc = step.side == Side::Right ? merkle_node(acc, step.sibling) : merkle_node(step.sibling, acc);
    index /= 2;
  }
  return acc == root;
}

Json to_json(const MerkleProof& proof) {
  Json path = Json::array();
  for (const auto& step : proof.path) {
    path.push_back({{"sibling", bytes_json(step.sibling)}, {"side", step.side == Side::Left ? "left" : "right"}});
  }
  return {{"leafIndex", proof.leaf_index}, {"path", std::move(path)}};
}

MerkleProof merkle_proof_from_json(const Json& j) {
  try {
    MerkleProof proof;
    proof.leaf_index = j.at("leafIndex").get<std::uint64_t>();
    for (const auto& step : j.at("path")) {
      const auto& side = step.at("side").get_ref<const std::string&>();
      if (side != "left" && side != "right") throw Error(ErrorCode::Malformed, "bad merkle side");
      proof.path.push_back({json_array<32>(step.at("sibling")), side == "left" ? Side::Left : Side::Right});
    }
    return proof;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("merkle proof: ") + e.what());
  }
}

}  // namespace ssi::crypto
