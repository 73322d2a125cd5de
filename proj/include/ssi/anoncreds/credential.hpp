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
#include <optional>
#include <string>
#include <vector>

#include "ssi/anoncreds/revocation.hpp"
#include "ssi/crypto/commitment.hpp"
#include "ssi/crypto/keys.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::anoncreds {

struct AttributeValue {
  std::string value;
  crypto::Salt salt{};
};

struct Credential {
  std::string schema_id;
  std::string cred_def_id;
  std::string rev_reg_id;  // empty if not revocable
  std::uint32_t rev_index = 0;
  std::map<std::string, AttributeValue> attributes;
  crypto::PublicKey holder_binding_key{};
  Digest credential_root{};
  crypto::Signature issuer_signature{};

  bool revocable() const { return !rev_reg_id.empty(); }
};

Digest holder_binding_leaf(const crypto::PublicKey& key);
Digest revocation_ref_leaf(std::string_view rev_reg_id, std::uint32_t rev_index);

/// Leaves of the credential root: attribute commitments by attribute name,
/// then the holder binding, then the revocation reference.
std::vector<Digest> credential_leaves(const Credential& cred);

/// Throws SchemaMismatch unless \p values covers exactly \p schema_attrs and
/// RegistryFull when \p registry has no free index.
Credential issue(const ledger::CredDefRecord& cred_def, const crypto::KeyPair& issuer_keys,
                 const std::vector<std::string>& schema_attrs, RevocationRegistry* registry,
                 const crypto::PublicKey& holder_binding_key, const std::map<std::string, std::string>& values);

/// Holder-side acceptance check: root recomputes and the issuer signature holds.
bool check_credential(const Credential& cred, const crypto::PublicKey& issuer_key);

Json to_json(const Credential& cred);
Credential credential_from_json(const Json& j);

}  // namespace ssi::anoncreds
