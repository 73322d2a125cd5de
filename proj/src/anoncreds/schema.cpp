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
#include "ssi/anoncreds/schema.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "ssi/common/error.hpp"

namespace ssi::anoncreds {

Schema create_schema(const std::string& issuer_did, const std::string& name, const std::string& version,
                     std::vector<std::string> attr_names) {
  if (name.empty() || name.find(':') != std::string::npos) throw Error(ErrorCode::InvalidSchema, "bad schema name");
  static const std::regex version_re(R"(\d+\.\d+)");
  if (!std::regex_match(version, version_re)) throw Error(ErrorCode::InvalidSchema, "version must be major.minor");
  if (attr_names.empty()) throw Error(ErrorCode::InvalidSchema, "schema needs at least one attribute");
  std::set<std::string> seen;
  for (const auto& a : attr_names) {
    if (a.empty()) throw Error(ErrorCode::InvalidSchema, "empty attribute name");
    if (!seen.insert(a).second) throw Error(ErrorCode::InvalidSchema, "duplicate attribute " + a);
  }
  return {ledger::schema_id(issuer_did, name, version), issuer_did, name, version, std::move(attr_names)};
}

Schema schema_from_record(const ledger::SchemaRecord& r) {
  return {r.id, r.issuer_did, r.name, r.version, r.attr_names};
}

std::vector<std::string> sorted_attrs(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  return names;
}

Json schema_payload(const Schema& s) {
  return {{"name", s.name}, {"version", s.version}, {"attrNames", s.attr_names}};
}

Json cred_def_payload(const std::string& schema_id, const std::string& tag, const crypto::PublicKey& issuer_key,
                      bool supports_revocation) {
  return {{"schemaId", schema_id},
          {"tag", tag},
          {"issuerPublicKey", bytes_json(issuer_key)},
          {"supportsRevocation", supports_revocation}};
}

}  // namespace ssi::anoncreds
