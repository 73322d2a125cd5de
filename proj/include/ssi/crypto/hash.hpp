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
#include <string_view>

#include "ssi/common/bytes.hpp"

namespace ssi::crypto {

inline constexpr std::string_view kHashId = "sha256";

/// One-byte prefixes separating every hashed structure in the system.
enum class Domain : std::uint8_t {
  Commitment = 0x01,
  MerkleNode = 0x02,
  TxnChain = 0x03,
  RevocationLeaf = 0x04,
  HolderBinding = 0x05,
  RevocationRef = 0x06,
  Presentation = 0x07,
  Puzzle = 0x08,
  NodeAck = 0x09,
};

Digest sha256(ByteView data);
Digest tagged_hash(Domain domain, ByteView data);

}  // namespace ssi::crypto
