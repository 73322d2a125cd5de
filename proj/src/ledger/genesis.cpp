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
#include "ssi/ledger/genesis.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ssi/common/error.hpp"
#include "ssi/common/json_util.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::ledger {

GenesisConfig parse_genesis(std::string_view text, std::string file_path) {
  GenesisConfig cfg;
  cfg.file_path = std::move(file_path);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      if (j.contains("signatureScheme")) {
        cfg.signature_scheme_id = j["signatureScheme"].get<std::string>();
        continue;
      }
      GenesisNode node;
      node.alias = j.at("alias").get<std::string>();
      node.node_verkey = crypto::key_from_verkey(j.at("nodeVerkey").get<std::string>());
      node.endpoint = j.at("endpoint").get<std::string>();
      node.services = j.value("services", std::vector<std::string>{"VALIDATOR"});
      cfg.nodes.push_back(std::move(node));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::InvalidGenesis, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidGenesis, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

GenesisConfig load_genesis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidGenesis, "cannot read genesis file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_genesis(ss.str(), path.string());
}

std::string format_genesis(const GenesisConfig& config) {
  std::string out = canonical({{"signatureScheme", config.signature_scheme_id}, {"hash", crypto::kHashId}}) + "\n";
  for (const auto& n : config.nodes) {
    out += canonical({{"alias", n.alias},
                      {"nodeVerkey", crypto::verkey_string(n.node_verkey)},
                      {"endpoint", n.endpoint},
                      {"services", n.services}}) +
           "\n";
  }
  return out;
}

void write_genesis(const std::filesystem::path& path, const GenesisConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << format_genesis(config);
}

std::size_t max_faulty(std::size_t node_count) { return node_count == 0 ? 0 : (node_count - 1) / 3; }

void validate_genesis(const GenesisConfig& config) {
  const auto n = config.nodes.size();
  if (n < 4) throw Error(ErrorCode::InsufficientNodes, std::to_string(n) + " nodes, need at least 4");
  if (n != 3 * max_faulty(n) + 1) {
    throw Error(ErrorCode::InvalidGenesis, "node count must be 3f+1, got " + std::to_string(n));
  }
  if (config.signature_scheme_id != crypto::kSignatureSchemeId) {
    throw Error(ErrorCode::InvalidGenesis, "unsupported signature scheme " + config.signature_scheme_id);
  }
  std::set<std::string> aliases;
  for (const auto& node : config.nodes) {
    if (node.alias.empty() || !aliases.insert(node.alias).second) {
      throw Error(ErrorCode::InvalidGenesis, "duplicate or empty alias '" + node.alias + "'");
    }
  }
}

crypto::KeyPair fixture_node_keys(std::string_view alias) {
  const auto seed = crypto::seed_from_label("node:" + std::string(alias));
  return crypto::generate_keypair(seed);
}

}  // namespace ssi::ledger
