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
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssi/agent/records.hpp"
#include "ssi/common/clock.hpp"
#include "ssi/crypto/keys.hpp"

namespace ssi::authz {

using TokenNonce = ByteArray<16>;

struct TokenClaims {
  std::string sub;  // holder's pairwise DID
  std::vector<std::string> roles;
  std::int64_t iat = 0;
  std::int64_t exp = 0;
  TokenNonce nonce{};
  std::map<std::string, std::string> disclosed;
};

Json to_json(const TokenClaims& c);
TokenClaims claims_from_json(const Json& j);

struct RoleMappingRule {
  std::string cred_def_id;
  std::vector<std::string> required_attrs;
  std::map<std::string, std::string> attr_equals;
  std::vector<std::string> grants;
};

struct ProtectedResource {
  std::string resource_id;
  std::vector<std::string> allowed_roles;
};

struct AuthzRules {
  std::vector<RoleMappingRule> rules;
  std::vector<ProtectedResource> resources;
};

/// Throws Malformed on a rule without grants or a resource without roles.
AuthzRules rules_from_json(const Json& j);
Json to_json(const AuthzRules& r);
/// "{NAME}" in a credDefId is replaced from \p vars, since cred def ids are
/// only known once registered.
AuthzRules load_rules(const std::filesystem::path& path, const std::map<std::string, std::string>& vars = {});

/// Sorted union of the grants of every rule that matches.
std::vector<std::string> granted_roles(const std::vector<RoleMappingRule>& rules, const std::string& cred_def_id,
                                       const std::map<std::string, std::string>& disclosed);

/// Splits a token into its three sections and checks the signature only.
/// Throws InvalidToken.
TokenClaims decode_token(const std::string& token, const crypto::PublicKey& issuer);

class Provider {
 public:
  static constexpr std::int64_t kDefaultLifetimeS = 300;

  Provider(crypto::KeyPair keys, AuthzRules rules, std::shared_ptr<const Clock> clock,
           std::int64_t lifetime_s = kDefaultLifetimeS);

  /// Throws NotVerified unless the exchange ended VERIFIED_TRUE, NoRole if no
  /// rule matches. \p subject is the holder's pairwise DID.
  std::string authorize(const agent::PresentationExchange& exchange, const std::string& subject);

  /// Accepts once: signature, expiry, then the nonce is marked seen.
  /// Throws InvalidToken, Expired or ReplayRejected.
  TokenClaims validate_token(const std::string& token);
  /// Same checks without consuming the nonce.
  TokenClaims introspect(const std::string& token) const;

  /// Throws NotFound for an unknown resource.
  bool check_access(const TokenClaims& claims, const std::string& resource_id) const;

  const crypto::PublicKey& public_key() const { return keys_.public_key; }
  const AuthzRules& rules() const { return rules_; }
  void set_rules(AuthzRules rules);

 private:
  TokenClaims checked(const std::string& token) const;

  crypto::KeyPair keys_;
  AuthzRules rules_;
  std::shared_ptr<const Clock> clock_;
  std::int64_t lifetime_s_;
  mutable std::mutex mu_;
  std::map<std::string, std::int64_t> seen_;  // nonce -> exp
};

}  // namespace ssi::authz
