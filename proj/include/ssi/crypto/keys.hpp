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

#include <optional>
#include <string>
#include <string_view>

#include "ssi/common/bytes.hpp"

namespace ssi::crypto {

/// The one signature scheme used by the whole system. DIDs are derived from
/// key bytes, so changing it changes every identifier.
inline constexpr std::string_view kSignatureSchemeId = "ed25519";

using Seed = ByteArray<32>;
using PublicKey = ByteArray<32>;
using SecretKey = ByteArray<64>;
using Signature = ByteArray<64>;

struct KeyPair {
  Seed seed{};
  PublicKey public_key{};
  SecretKey secret_key{};
};

/// Deterministic in \p seed; a CSPRNG seed is drawn when none is given.
/// Throws InvalidSeed unless the seed is exactly 32 bytes.
KeyPair generate_keypair(std::optional<ByteView> seed = std::nullopt);

Signature sign(const KeyPair& keys, ByteView message);

bool verify(const PublicKey& public_key, ByteView message, const Signature& signature) noexcept;
bool verify(ByteView public_key, ByteView message, ByteView signature) noexcept;

/// Indy-style DID: base58 of the first 16 bytes of the verification key.
std::string did_from_key(const PublicKey& public_key);
std::string verkey_string(const PublicKey& public_key);
PublicKey key_from_verkey(std::string_view verkey);

/// Seed derived from an arbitrary label; used for fixture identities only.
Seed seed_from_label(std::string_view label);

}  // namespace ssi::crypto
