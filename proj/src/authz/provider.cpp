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
#include "ssi/authz/provider.hpp"

#include <algorithm>
#include <fstream>

#include <sodium.h>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"

namespace ssi::authz {

namespace {

const std::string kHeader = R"({"alg":"EdDSA","typ":"JWT"})";

std::string b64(std::string_view s) { return encoding::base64url(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())); }

Bytes as_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string substitute(std::string s, const std::map<std::string, std::string>& vars) {
  for (const auto& [k, v] : vars) {
    const auto key = "{" + k + "}";
    for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + v.size())) s.replace(pos, key.size(), v);
  }
  return s;
}

}  // namespace

Json to_json(const TokenClaims& c) {
  return {{"sub", c.sub},   {"roles", c.roles}, {"iat", c.iat}, {"exp", c.exp}, {"nonce", encoding::base64url(c.nonce)},
          {"disclosed", c.disclosed}};
}

TokenClaims claims_from_json(const Json& j) {
  TokenClaims c;
  c.sub = j.at("sub").get<std::string>();
  c.roles = j.at("roles").get<std::vector<std::string>>();
  c.iat = j.at("iat").get<std::int64_t>();
  c.exp = j.at("exp").get<std::int64_t>();
  c.nonce = encoding::to_array<16>(encoding::from_base64url(j.at("nonce").get<std::string>()));
  c.disclosed = j.at("disclosed").get<std::map<std::string, std::string>>();
  return c;
}

AuthzRules rules_from_json(const Json& j) {
  AuthzRules out;
  try {
    for (const auto& r : j.at("rules")) {
      RoleMappingRule rule;
      rule.cred_def_id = r.at("credDefId").get<std::string>();
      rule.required_attrs = r.value("requiredAttrs", std::vector<std::string>{});
      rule.attr_equals = r.value("attrEquals", std::map<std::string, std::string>{});
      rule.grants = r.at("grants").get<std::vector<std::string>>();
      if (rule.grants.empty()) throw Error(ErrorCode::Malformed, "rule for " + rule.cred_def_id + " grants nothing");
      out.rules.push_back(std::move(rule));
    }
    for (const auto& r : j.value("resources", Json::array())) {
      ProtectedResource res{r.at("resourceId").get<std::string>(), r.at("allowedRoles").get<std::vector<std::string>>()};
      if (res.allowed_roles.empty()) throw Error(ErrorCode::Malformed, "resource " + res.resource_id + " allows no role");
      out.resources.push_back(std::move(res));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("authorization rules: ") + e.what());
  }
  return out;
}

Json to_json(const AuthzRules& r) {
  Json rules = Json::array();
  for (const auto& x : r.rules) {
    rules.push_back({{"credDefId", x.cred_def_id},
                     {"requiredAttrs", x.required_attrs},
                     {"attrEquals", x.attr_equals},
                     {"grants", x.grants}});
  }
  Json resources = Json::array();
  for (const auto& x : r.resources) resources.push_back({{"resourceId", x.resource_id}, {"allowedRoles", x.allowed_roles}});
  return {{"rules", rules}, {"resources", resources}};
}

AuthzRules load_rules(const std::filesystem::path& path, const std::map<std::string, std::string>& vars) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return rules_from_json(Json::parse(substitute(text, vars)));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, path.string() + ": " + e.what());
  }
}

std::vector<std::string> granted_roles(const std::vector<RoleMappingRule>& rules, const std::string& cred_def_id,
                                       const std::map<std::string, std::string>& disclosed) {
  std::set<std::string> roles;
  for (const auto& r : rules) {
    if (r.cred_def_id != cred_def_id) continue;
    const bool has_all = std::all_of(r.required_attrs.begin(), r.required_attrs.end(),
                                     [&](const std::string& a) { return disclosed.contains(a); });
    const bool equal = std::all_of(r.attr_equals.begin(), r.attr_equals.end(), [&](const auto& kv) {
      auto it = disclosed.find(kv.first);
      return it != disclosed.end() && it->second == kv.second;
    });
    if (has_all && equal) roles.insert(r.grants.begin(), r.grants.end());
  }
  return {roles.begin(), roles.end()};
}

TokenClaims decode_token(const std::string& token, const crypto::PublicKey& issuer) {
  const auto d1 = token.find('.');
  const auto d2 = d1 == std::string::npos ? d1 : token.find('.', d1 + 1);
  if (d2 == std::string::npos || token.find('.', d2 + 1) != std::string::npos) {
    throw Error(ErrorCode::InvalidToken, "token must have three sections");
  }
  try {
    const auto header = encoding::from_base64url(std::string_view(token).substr(0, d1));
    if (Json::parse(header).value("alg", "") != "EdDSA") throw Error(ErrorCode::InvalidToken, "unsupported alg");
    const auto sig = encoding::from_base64url(std::string_view(token).substr(d2 + 1));
    if (!crypto::verify(issuer, as_bytes(std::string_view(token).substr(0, d2)), encoding::to_array<64>(sig))) {
      throw Error(ErrorCode::InvalidToken, "bad signature");
    }
    const auto claims = encoding::from_base64url(std::string_view(token).substr(d1 + 1, d2 - d1 - 1));
    return claims_from_json(Json::parse(claims));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidToken) throw;
    throw Error(ErrorCode::InvalidToken, e.what());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidToken, e.what());
  }
}

Provider::Provider(crypto::KeyPair keys, AuthzRules rules, std::shared_ptr<const Clock> clock, std::int64_t lifetime_s)
    : keys_(std::move(keys)), rules_(std::move(rules)), clock_(std::move(clock)), lifetime_s_(lifetime_s) {
  if (lifetime_s_ <= 0) throw Error(ErrorCode::InvalidArgument, "token lifetime must be positive");
}

void Provider::set_rules(AuthzRules rules) {
  std::lock_guard lock(mu_);
  rules_ = std::move(rules);
}

std::string Provider::authorize(const agent::PresentationExchange& exchange, const std::string& subject) {
  if (exchange.role != agent::ExchangeRole::Initiator || exchange.state != agent::PresExState::VerifiedTrue ||
      !exchange.result || !exchange.result->verified) {
    throw Error(ErrorCode::NotVerified, "exchange " + exchange.pres_ex_id + " is " +
                                            std::string(agent::to_string(exchange.state)));
  }
  TokenClaims c;
  {
    std::lock_guard lock(mu_);
    c.roles = granted_roles(rules_.rules, exchange.request.cred_def_id, exchange.result->disclosed);
  }
  if (c.roles.empty()) throw Error(ErrorCode::NoRole, "no rule matches the disclosed attributes");
  c.sub = subject;
  c.iat = clock_->now_s();
  c.exp = c.iat + lifetime_s_;
  randombytes_buf(c.nonce.data(), c.nonce.size());
  c.disclosed = exchange.result->disclosed;

  const auto input = b64(kHeader) + "." + b64(to_json(c).dump());
  const auto sig = crypto::sign(keys_, as_bytes(input));
  return input + "." + encoding::base64url(sig);
}

TokenClaims Provider::checked(const std::string& token) const {
  auto c = decode_token(token, keys_.public_key);
  if (clock_->now_s() >= c.exp) throw Error(ErrorCode::Expired, "token expired at " + std::to_string(c.exp));
  return c;
}

TokenClaims Provider::introspect(const std::string& token) const {
  auto c = checked(token);
  std::lock_guard lock(mu_);
  if (seen_.contains(encoding::base64url(c.nonce))) throw Error(ErrorCode::ReplayRejected, "token already used");
  return c;
}

TokenClaims Provider::validate_token(const std::string& token) {
  auto c = checked(token);
  const auto now = clock_->now_s();
  std::lock_guard lock(mu_);
  std::erase_if(seen_, [now](const auto& kv) { return kv.second <= now; });
  if (!seen_.emplace(encoding::base64url(c.nonce), c.exp).second) {
    throw Error(ErrorCode::ReplayRejected, "token already used");
  }
  return c;
}

bool Provider::check_access(const TokenClaims& claims, const std::string& resource_id) const {
  std::lock_guard lock(mu_);
  for (const auto& r : rules_.resources) {
    if (r.resource_id != resource_id) continue;
    return std::any_of(claims.roles.begin(), claims.roles.end(), [&](const std::string& role) {
      return std::find(r.allowed_roles.begin(), r.allowed_roles.end(), role) != r.allowed_roles.end();
    });
  }
  throw Error(ErrorCode::NotFound, "resource " + resource_id);
}

}  // namespace ssi::authz
