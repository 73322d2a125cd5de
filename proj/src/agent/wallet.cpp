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
#include "ssi/agent/wallet.hpp"

#include <cstring>

#include <sodium.h>

#include "ssi/common/error.hpp"

namespace ssi::agent {

namespace {

constexpr std::string_view kMagic{"SSIWLT1\0", 8};

template <typename M, typename F>
Json map_json(const M& m, F&& conv) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = conv(v);
  return j;
}

}  // namespace

const crypto::KeyPair& WalletData::new_key(std::optional<ByteView> seed) {
  auto kp = crypto::generate_keypair(seed);
  const auto did = crypto::did_from_key(kp.public_key);
  return keys.insert_or_assign(did, kp).first->second;
}

const crypto::KeyPair& WalletData::key_for(const crypto::PublicKey& pk) const {
  auto it = keys.find(crypto::did_from_key(pk));
  if (it == keys.end() || it->second.public_key != pk) throw Error(ErrorCode::NotFound, "no key for " + crypto::verkey_string(pk));
  return it->second;
}

Json to_json(const WalletData& w) {
  return {{"label", w.label},
          {"keys", map_json(w.keys, [](const crypto::KeyPair& k) { return bytes_json(k.seed); })},
          {"publicDid", w.public_did},
          {"credDefKeys", w.cred_def_keys},
          {"registries", map_json(w.registries, [](const anoncreds::RevocationRegistry& r) { return r.to_json(); })},
          {"credDefRegistry", w.cred_def_registry},
          {"credentials", map_json(w.credentials, [](const StoredCredential& c) { return to_json(c); })},
          {"connections", map_json(w.connections, [](const ConnectionRecord& c) { return to_json(c); })},
          {"credExchanges", map_json(w.cred_exchanges, [](const CredentialExchange& c) { return to_json(c); })},
          {"presExchanges", map_json(w.pres_exchanges, [](const PresentationExchange& c) { return to_json(c); })},
          {"usedInvitationNonces", w.used_invitation_nonces}};
}

WalletData wallet_from_json(const Json& j) {
  WalletData w;
  w.label = j.at("label").get<std::string>();
  for (const auto& [did, seed] : j.at("keys").items()) {
    const auto s = json_bytes(seed);
    w.keys[did] = crypto::generate_keypair(ByteView(s));
  }
  w.public_did = j.at("publicDid").get<std::string>();
  w.cred_def_keys = j.at("credDefKeys").get<std::map<std::string, std::string>>();
  for (const auto& [id, r] : j.at("registries").items()) w.registries.emplace(id, anoncreds::RevocationRegistry::from_json(r));
  w.cred_def_registry = j.at("credDefRegistry").get<std::map<std::string, std::string>>();
  for (const auto& [id, c] : j.at("credentials").items()) w.credentials[id] = stored_credential_from_json(c);
  for (const auto& [id, c] : j.at("connections").items()) w.connections[id] = connection_from_json(c);
  for (const auto& [id, c] : j.at("credExchanges").items()) w.cred_exchanges[id] = cred_ex_from_json(c);
  for (const auto& [id, c] : j.at("presExchanges").items()) w.pres_exchanges[id] = pres_ex_from_json(c);
  w.used_invitation_nonces = j.at("usedInvitationNonces").get<std::set<std::string>>();
  return w;
}

namespace {

ByteArray<crypto_secretbox_KEYBYTES> derive_key(std::string_view passphrase, const ByteArray<crypto_pwhash_SALTBYTES>& salt) {
  ByteArray<crypto_secretbox_KEYBYTES> key{};
  if (crypto_pwhash(key.data(), key.size(), passphrase.data(), passphrase.size(), salt.data(),
                    crypto_pwhash_OPSLIMIT_INTERACTIVE, crypto_pwhash_MEMLIMIT_INTERACTIVE, crypto_pwhash_ALG_ARGON2ID13) != 0) {
    throw Error(ErrorCode::IoError, "key derivation ran out of memory");
  }
  return key;
}

}  // namespace

Bytes export_wallet(const WalletData& w, std::string_view passphrase) {
  ByteArray<crypto_pwhash_SALTBYTES> salt{};
  ByteArray<crypto_secretbox_NONCEBYTES> nonce{};
  randombytes_buf(salt.data(), salt.size());
  randombytes_buf(nonce.data(), nonce.size());
  auto key = derive_key(passphrase, salt);
  const auto plain = canonical(to_json(w));

  Bytes out;
  append(out, kMagic);
  append(out, salt);
  append(out, nonce);
  const auto offset = out.size();
  out.resize(offset + plain.size() + crypto_secretbox_MACBYTES);
  crypto_secretbox_easy(out.data() + offset, reinterpret_cast<const unsigned char*>(plain.data()), plain.size(),
                        nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  return out;
}

WalletData import_wallet(ByteView blob, std::string_view passphrase) {
  const std::size_t header = kMagic.size() + crypto_pwhash_SALTBYTES + crypto_secretbox_NONCEBYTES;
  if (blob.size() < header + crypto_secretbox_MACBYTES ||
      std::memcmp(blob.data(), kMagic.data(), kMagic.size()) != 0) {
    throw Error(ErrorCode::Malformed, "not a wallet export");
  }
  ByteArray<crypto_pwhash_SALTBYTES> salt{};
  ByteArray<crypto_secretbox_NONCEBYTES> nonce{};
  std::memcpy(salt.data(), blob.data() + kMagic.size(), salt.size());
  std::memcpy(nonce.data(), blob.data() + kMagic.size() + salt.size(), nonce.size());
  auto key = derive_key(passphrase, salt);

  const auto cipher = blob.subspan(header);
  std::string plain(cipher.size() - crypto_secretbox_MACBYTES, '\0');
  const int rc = crypto_secretbox_open_easy(reinterpret_cast<unsigned char*>(plain.data()), cipher.data(), cipher.size(),
                                            nonce.data(), key.data());
  sodium_memzero(key.data(), key.size());
  if (rc != 0) throw Error(ErrorCode::AuthenticationFailure, "wrong passphrase or altered wallet");
  try {
    return wallet_from_json(Json::parse(plain));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("wallet contents: ") + e.what());
  }
}

}  // namespace ssi::agent
