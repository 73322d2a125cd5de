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
#include <span>
#include <vector>

#include "ssi/common/bytes.hpp"
#include "ssi/common/json_util.hpp"

namespace ssi::crypto {

/// Which side of the running hash the sibling sits on.
enum class Side : std::uint8_t { Left, Right };

struct MerkleStep {
  Digest sibling{};
  Side side = Side::Left;
  bool operator==(const MerkleStep&) const = default;
};

struct MerkleProof {
  std::uint64_t leaf_index = 0;
  std::vector<MerkleStep> path;
  bool operator==(const MerkleProof&) const = default;
};

/// H("EMPTY-LEAF"), filling the tree up to its padded width.
const Digest& merkle_pad();

Digest merkle_node(const Digest& left, const Digest& right);

/// Padded width: the next power of two, never below two.
std::size_t merkle_width(std::size_t leaf_count);

Digest merkle_root(std::span<const Digest> leaves);
MerkleProof merkle_prove(std::span<const Digest> leaves, std::size_t index);
bool merkle_verify(const Digest& root, const Digest& leaf, const MerkleProof& proof) noexcept;

/// Tree with all levels cached; point updates and proofs are O(log n).
class MerkleTree {
 public:
  explicit MerkleTree(std::vector<Digest> leaves);

  const Digest& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return leaf_count_; }
  const Digest& leaf(std::size_t index) const;

  void update(std::size_t index, const Digest& leaf);
  MerkleProof prove(std::size_t index) const;

 private:
  std::size_t leaf_count_;
  std::vector<std::vector<Digest>> levels_;
};

Json to_json(const MerkleProof& proof);
MerkleProof merkle_proof_from_json(const Json& j);

}  // namespace ssi::crypto
