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

#include "ssi/common/bytes.hpp"
#include "ssi/common/json_util.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::crypto {

using Nonce = ByteArray<24>;

Nonce random_nonce();

/// Authenticated pairwise encryption. The AEAD tag covers the ciphertext plus
/// (senderKey, recipientKey, timestamp); the nonce is the AEAD nonce.
struct SealedEnvelope {
  PublicKey sender_key{};
  PublicKey recipient_key{};
  Nonce nonce{};
  std::int64_t timestamp_ms = 0;
  Bytes ciphertext;
};

SealedEnvelope seal(const KeyPair& sender, const PublicKey& recipient, ByteView message,
                    std::int64_t timestamp_ms);

/// Throws AuthenticationFailure on the wrong key or any tampering.
Bytes open(const KeyPair& recipient, const SealedEnvelope& envelope);

Json to_json(const SealedEnvelope& envelope);
SealedEnvelope envelope_from_json(const Json& j);

}  // namespace ssi::crypto
