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

#include <map>
#include <mutex>
#include <set>
#include <string>

#include "ssi/agent/records.hpp"
#include "ssi/anoncreds/revocation.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::agent {

/// Everything an agent owns. Plain data; Wallet adds the lock.
struct WalletData {
  std::string label;
  std::map<std::string, crypto::KeyPair> keys;  // DID -> key pair
  std::string public_did;                       // Verinym, empty until enrolled
  std::map<std::string, std::string> cred_def_keys;  // credDefId -> DID in keys
  std::map<std::string, anoncreds::RevocationRegistry> registries;
  std::map<std::string, std::string> cred_def_registry;  // credDefId -> active revRegId
  std::map<std::string, StoredCredential> credentials;
  std::map<std::string, ConnectionRecord> connections;
  std::map<std::string, CredentialExchange> cred_exchanges;
  std::map<std::string, PresentationExchange> pres_exchanges;
  std::set<std::string> used_invitation_nonces;

  /// Stores a fresh key pair under its DID.
  const crypto::KeyPair& new_key(std::optional<ByteView> seed = std::nullopt);
  const crypto::KeyPair& key_for(const crypto::PublicKey& pk) const;
};

Json to_json(const WalletData& w);
WalletData wallet_from_json(const Json& j);

/// Layout: magic "SSIWLT1\0" | salt(16) | nonce(24) | secretbox(canonical JSON).
/// The key is Argon2id(passphrase, salt).
Bytes export_wallet(const WalletData& w, std::string_view passphrase);
/// Throws AuthenticationFailure for a wrong passphrase or altered blob and
/// Malformed for a blob that is not a wallet export. Never returns partial data.
WalletData import_wallet(ByteView blob, std::string_view passphrase);

class Wallet {
 public:
  explicit Wallet(WalletData data = {}) : data_(std::move(data)) {}

  template <typename F>
  auto with(F&& f) {
    std::lock_guard lock(mu_);
    return f(data_);
  }
  template <typename F>
  auto with(F&& f) const {
    std::lock_guard lock(mu_);
    return f(static_cast<const WalletData&>(data_));
  }

  WalletData snapshot() const {
    std::lock_guard lock(mu_);
    return data_;
  }
  void replace(WalletData data) {
    std::lock_guard lock(mu_);
    data_ = std::move(data);
  }

 private:
  mutable std::recursive_mutex mu_;
  WalletData data_;
};

}  // namespace ssi::agent
