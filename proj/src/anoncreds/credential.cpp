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
#include "ssi/anoncreds/credential.hpp"

#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"
#include "ssi/crypto/merkle.hpp"

namespace ssi::anoncreds {

Digest holder_binding_leaf(const crypto::PublicKey& key) {
  return crypto::tagged_hash(crypto::Domain::HolderBinding, key);
}

Digest revocation_ref_leaf(std::string_view rev_reg_id, std::uint32_t rev_index) {
  Bytes buf;
  append_field(buf, rev_reg_id);
  append_u32(buf, rev_index);
  return crypto::tagged_hash(crypto::Domain::RevocationRef, buf);
}

std::vector<Digest> credential_leaves(const Credential& cred) {
  std::vector<Digest> leaves;
  leaves.reserve(cred.attributes.size() + 2);
  // std::map iterates in attribute-name order
  for (const auto& [name, attr] : cred.attributes) {
    leaves.push_back(crypto::commitment_digest(name, attr.value, attr.salt));
  }
  leaves.push_back(holder_binding_leaf(cred.holder_binding_key));
  leaves.push_back(revocation_ref_leaf(cred.rev_reg_id, cred.rev_index));
  return leaves;
}

Credential issue(const ledger::CredDefRecord& cred_def, const crypto::KeyPair& issuer_keys,
                 const std::vector<std::string>& schema_attrs, RevocationRegistry* registry,
                 const crypto::PublicKey& holder_binding_key, const std::map<std::string, std::string>& values) {
  if (issuer_keys.public_key != cred_def.issuer_public_key) {
    throw Error(ErrorCode::InvalidArgument, "issuer key does not match the credential definition");
  }
  if (values.size() != schema_attrs.size()) {
    throw Error(ErrorCode::SchemaMismatch, "expected " + std::to_string(schema_attrs.size()) + " attributes, got " +
                                               std::to_string(values.size()));
  }
  Credential cred;
  cred.schema_id = cred_def.schema_id;
  cred.cred_def_id = cred_def.id;
  cred.holder_binding_key = holder_binding_key;
  for (const auto& name : schema_attrs) {
    auto it = values.find(name);
    if (it == values.end()) throw Error(ErrorCode::SchemaMismatch, "missing attribute " + name);
    cred.attributes[name] = {it->second, crypto::random_salt()};
  }
  if (registry) {
    if (registry->cred_def_id() != cred_def.id) throw Error(ErrorCode::InvalidArgument, "registry belongs to another cred def");
    cred.rev_reg_id = registry->id();
    cred.rev_index = registry->allocate();
  }
  cred.credential_root = crypto::merkle_root(credential_leaves(cred));
  cred.issuer_signature = crypto::sign(issuer_keys, cred.credential_root);
  return cred;
}

bool check_credential(const Credential& cred, const crypto::PublicKey& issuer_key) {
  return crypto::merkle_root(credential_leaves(cred)) == cred.credential_root &&
         crypto::verify(issuer_key, cred.credential_root, cred.issuer_signature);
}

Json to_json(const Credential& c) {
  Json attrs = Json::object();
  for (const auto& [name, a] : c.attributes) attrs[name] = {{"value", a.value}, {"salt", bytes_json(a.salt)}};
  return {{"schemaId", c.schema_id},
          {"credDefId", c.cred_def_id},
          {"revRegId", c.rev_reg_id},
          {"revIndex", c.rev_index},
          {"attributes", std::move(attrs)},
          {"holderBindingKey", bytes_json(c.holder_binding_key)},
          {"credentialRoot", bytes_json(c.credential_root)},
          {"issuerSignature", bytes_json(c.issuer_signature)}};
}

Credential credential_from_json(const Json& j) {
  try {
    Credential c;
    c.schema_id = j.at("schemaId").get<std::string>();
    c.cred_def_id = j.at("credDefId").get<std::string>();
    c.rev_reg_id = j.at("revRegId").get<std::string>();
    c.rev_index = j.at("revIndex").get<std::uint32_t>();
    for (const auto& [name, a] : j.at("attributes").items()) {
      c.attributes[name] = {a.at("value").get<std::string>(), json_array<16>(a.at("salt"))};
    }
    c.holder_binding_key = json_array<32>(j.at("holderBindingKey"));
    c.credential_root = json_array<32>(j.at("credentialRoot"));
    c.issuer_signature = json_array<64>(j.at("issuerSignature"));
    return c;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("credential: ") + e.what());
  }
}

}  // namespace ssi::anoncreds
