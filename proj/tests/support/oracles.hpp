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

#include <sodium.h>

#include <vector>

#include "ssi/common/bytes.hpp"

namespace ssi::testing {

// Reference hashing built straight from the definitions with plain libsodium
// calls, independent of the crypto module.
inline Digest oracle_sha256(const Bytes& b) {
  Digest d{};
  crypto_hash_sha256(d.data(), b.data(), b.size());
  return d;
}

// Pad to max(2, next power of two) with H("EMPTY-LEAF"), node = SHA256(0x02 || l || r).
inline Digest oracle_root(std::vector<Digest> level) {
  std::size_t width = 2;
  while (width < level.size()) width *= 2;
  level.resize(width, oracle_sha256(to_bytes("EMPTY-LEAF")));
  while (level.size() > 1) {
    std::vector<Digest> up;
    for (std::size_t i = 0; i < level.size(); i += 2) {
      Bytes buf{0x02};
      buf.insert(buf.end(), level[i].begin(), level[i].end());
      buf.insert(buf.end(), level[i + 1].begin(), level[i + 1].end());
      up.push_back(oracle_sha256(buf));
    }
    level = std::move(up);
  }
  return level.front();
}

inline void oracle_be32(Bytes& b, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<std::uint8_t>(v >> s));
}

// SHA256(0x01 || be32 len || name || be32 len || value || salt)
inline Digest oracle_commitment(const std::string& name, const std::string& value, ByteView salt) {
  Bytes b{0x01};
  oracle_be32(b, static_cast<std::uint32_t>(name.size()));
  b.insert(b.end(), name.begin(), name.end());
  oracle_be32(b, static_cast<std::uint32_t>(value.size()));
  b.insert(b.end(), value.begin(), value.end());
  b.insert(b.end(), salt.begin(), salt.end());
  return oracle_sha256(b);
}

// SHA256(0x04 || salt || be32 index || status)
inline Digest oracle_status_leaf(ByteView salt, std::uint32_t index, bool revoked) {
  Bytes b{0x04};
  b.insert(b.end(), salt.begin(), salt.end());
  oracle_be32(b, index);
  b.push_back(revoked ? 0x01 : 0x00);
  return oracle_sha256(b);
}

}  // namespace ssi::testing
