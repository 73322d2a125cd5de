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
#include "ssi/crypto/envelope.hpp"

#include <sodium.h>

#include "ssi/common/error.hpp"

namespace ssi::crypto {

namespace {

constexpr std::string_view kEnvelopeLabel = "ssi-envelope-v1";

using SharedKey = ByteArray<crypto_aead_xchacha20poly1305_ietf_KEYBYTES>;

SharedKey shared_key(const KeyPair& mine, const PublicKey& theirs) {
  ByteArray<crypto_scalarmult_curve25519_BYTES> their_x{};
  ByteArray<crypto_scalarmult_curve25519_SCALARBYTES> my_x{};
  if (crypto_sign_ed25519_pk_to_curve25519(their_x.data(), theirs.data()) != 0) {
    throw Error(ErrorCode::AuthenticationFailure, "peer key is not a valid curve point");
  }
  crypto_sign_ed25519_sk_to_curve25519(my_x.data(), mine.secret_key.data());
  SharedKey key{};
  const int rc = crypto_box_beforenm(key.data(), their_x.data(), my_x.data());
  sodium_memzero(my_x.data(), my_x.size());
  if (rc != 0) throw Error(ErrorCode::AuthenticationFailure, "key agreement failed");
  return key;
}

Bytes associated_data(const SealedEnvelope& env) {
  Bytes ad;
  append(ad, kEnvelopeLabel);
  append(ad, env.sender_key);
  append(ad, env.recipient_key);
  append_u64(ad, static_cast<std::uint64_t>(env.timestamp_ms));
  return ad;
}

}  // namespace

Nonce random_nonce() {
  Nonce n{};
  randombytes_buf(n.data(), n.size());
  return n;
}

SealedEnvelope seal(const KeyPair& sender, const PublicKey& recipient, ByteView message,
                    std::int64_t timestamp_ms) {
  SealedEnvelope env{sender.public_key, recipient, random_nonce(), timestamp_ms, {}};
  auto key = shared_key(sender, recipient);
  const Bytes ad = associated_data(env);
  env.ciphertext.resize(message.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long written = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(env.ciphertext.data(), &written, message.data(), message.size(),
                                             ad.data(), ad.size(), nullptr, env.nonce.data(), key.data());
  env.ciphertext.resize(written);
  sodium_memzero(key.data(), key.size());
  return env;
}

Bytes open(const KeyPair& recipient, const SealedEnvelope& env) {
  if (env.recipient_key != recipient.public_key) {
    throw Error(ErrorCode::AuthenticationFailure, "envelope is not addressed to this key");
  }
  if (env.ciphertext.size() < crypto_aead_xchacha20poly1305_ietf_ABYTES) {
    throw Error(ErrorCode::AuthenticationFailure, "ciphertext too short");
  }
  auto key = shared_key(recipient, env.sender_key);
  const Bytes ad = associated_data(env);
  Bytes plain(env.ciphertext.size() - crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long written = 0;
  const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(plain.data(), &written, nullptr, env.ciphertext.data(),
                                                            env.ciphertext.size(), ad.data(), ad.size(),
                                                            env.nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  if (rc != 0) throw Error(ErrorCode::AuthenticationFailure, "envelope authentication failed");
  plain.resize(written);
  return plain;
}

Json to_json(const SealedEnvelope& env) {
  return {{"senderKey", bytes_json(env.sender_key)},
          {"recipientKey", bytes_json(env.recipient_key)},
          {"nonce", bytes_json(env.nonce)},
          {"timestamp", env.timestamp_ms},
          {"ciphertext", bytes_json(env.ciphertext)}};
}

SealedEnvelope envelope_from_json(const Json& j) {
  try {
    SealedEnvelope env;
    env.sender_key = json_array<32>(j.at("senderKey"));
    env.recipient_key = json_array<32>(j.at("recipientKey"));
    env.nonce = json_array<24>(j.at("nonce"));
    env.timestamp_ms = j.at("timestamp").get<std::int64_t>();
    env.ciphertext = json_bytes(j.at("ciphertext"));
    return env;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("envelope: ") + e.what());
  }
}

}  // namespace ssi::crypto
