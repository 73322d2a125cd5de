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

#include <filesystem>
#include <string>
#include <vector>

#include "ssi/crypto/keys.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::ledger {

struct GenesisNode {
  std::string alias;
  crypto::PublicKey node_verkey{};
  std::string endpoint;  // "host:port"
  std::vector<std::string> services{"VALIDATOR"};
};

struct GenesisConfig {
  std::string file_path;
  std::vector<GenesisNode> nodes;
  std::string signature_scheme_id{crypto::kSignatureSchemeId};
};

/// Trustee/steward identities written into the genesis batch.
struct GenesisNym {
  std::string did;
  crypto::PublicKey verkey{};
  Role role = Role::Steward;
};

/// JSON lines. An optional first header line {"signatureScheme": ..., "hash": ...}
/// is followed by one node record per line:
///   {"alias","nodeVerkey"(base58),"endpoint"("host:port"),"services":["VALIDATOR"]}
GenesisConfig parse_genesis(std::string_view text, std::string file_path = {});
GenesisConfig load_genesis(const std::filesystem::path& path);
std::string format_genesis(const GenesisConfig& config);
void write_genesis(const std::filesystem::path& path, const GenesisConfig& config);

/// InsufficientNodes below four nodes; InvalidGenesis unless N = 3f+1, aliases
/// are unique and the signature scheme matches.
void validate_genesis(const GenesisConfig& config);

std::size_t max_faulty(std::size_t node_count);

/// Deterministic node keys for fixture pools: seed = H("node:" + alias).
crypto::KeyPair fixture_node_keys(std::string_view alias);

}  // namespace ssi::ledger
