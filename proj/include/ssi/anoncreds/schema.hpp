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

#include <string>
#include <vector>

#include "ssi/common/json_util.hpp"
#include "ssi/crypto/keys.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::anoncreds {

struct Schema {
  std::string id;
  std::string issuer_did;
  std::string name;
  std::string version;  // "major.minor"
  std::vector<std::string> attr_names;
};

/// Throws InvalidSchema on an empty or duplicated attribute list or a version
/// that is not "major.minor".
Schema create_schema(const std::string& issuer_did, const std::string& name, const std::string& version,
                     std::vector<std::string> attr_names);

Schema schema_from_record(const ledger::SchemaRecord& record);

/// Attribute names in the order their commitments appear in a credential root.
std::vector<std::string> sorted_attrs(std::vector<std::string> names);

Json schema_payload(const Schema& schema);
Json cred_def_payload(const std::string& schema_id, const std::string& tag, const crypto::PublicKey& issuer_key,
                      bool supports_revocation);

}  // namespace ssi::anoncreds
