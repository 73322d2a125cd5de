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
#include "ssi/crypto/keys.hpp"

#include <sodium.h>

#include <algorithm>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::crypto {

KeyPair generate_keypair(std::optional<ByteView> seed) {
  KeyPair kp;
  if (seed) {
    if (seed->size() != kp.seed.size()) {
      throw Error(ErrorCode::InvalidSeed, "seed must be 32 bytes, got " + std::to_string(seed->size()));
    }
    std::copy(seed->begin(), seed->end(), kp.seed.begin());
  } else {
    randombytes_buf(kp.seed.data(), kp.seed.size());
  }
  crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), kp.seed.data());
  return kp;
}

Signature sign(const KeyPair& keys, ByteView message) {
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), keys.secret_key.data());
  return sig;
}

bool verify(const PublicKey& public_key, ByteView message, const Signature& signature) noexcept {
  return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                     public_key.data()) == 0;
}

bool verify(ByteView public_key, ByteView message, ByteView signature) noexcept {
  if (public_key.size() != crypto_sign_PUBLICKEYBYTES || signature.size() != crypto_sign_BYTES) {
    return false;
  }
  return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                     public_key.data()) == 0;
}

std::string did_from_key(const PublicKey& public_key) {
  return encoding::base58(ByteView(public_key.data(), 16));
}

std::string verkey_string(const PublicKey& public_key) { return encoding::base58(public_key); }

PublicKey key_from_verkey(std::string_view verkey) {
  return encoding::to_array<32>(encoding::from_base58(verkey));
}

Seed seed_from_label(std::string_view label) { return sha256(as_bytes(label)); }

}  // namespace ssi::crypto
