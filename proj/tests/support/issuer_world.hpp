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
#include <set>
#include <string>
#include <vector>

#include "ssi/anoncreds/presentation.hpp"
#include "ssi/anoncreds/schema.hpp"
#include "support/ledger_fixture.hpp"
#include "support/oracles.hpp"

namespace ssi::testing {

using namespace ssi::anoncreds;

inline const std::vector<std::string> kPidSchemaAttrs = {"licenseNumber", "licenseExpiryDate", "designation",
                                                        "medicalDiploma", "fullName"};

inline std::map<std::string, std::string> pid_sample() {
  return {{"licenseNumber", "LN-4471-A"},
          {"licenseExpiryDate", "2031-05-30"},
          {"designation", "Consultant Cardiologist"},
          {"medicalDiploma", "MBBS University of Colombo"},
          {"fullName", "Nimali Perera"}};
}

// Ledger pool with an endorsed issuer, a PID schema, a revocable cred def and
// a small revocation registry.
struct IssuerWorld {
  TestPool t = make_test_pool();
  Identity issuer = onboard(t, ledger::Role::Endorser);
  crypto::KeyPair issuer_keys = crypto::generate_keypair();
  Identity holder = new_identity();
  ledger::CredDefRecord cred_def;
  std::optional<RevocationRegistry> registry;

  explicit IssuerWorld(std::uint32_t max_cred_num = 8, bool revocable = true) {
    const auto schema = create_schema(issuer.did, "PID", "1.0", kPidSchemaAttrs);
    const auto s = submit(ledger::TxnKind::Schema, schema_payload(schema));
    submit(ledger::TxnKind::CredDef, cred_def_payload(schema.id, "default", issuer_keys.public_key, revocable));
    cred_def = t.ledger->get_cred_def(ledger::cred_def_id(issuer.did, s.seq_no, "default"));
    if (revocable) {
      registry = RevocationRegistry::create(ledger::rev_reg_id(issuer.did, cred_def.id, "r1"), cred_def.id, max_cred_num);
      submit(ledger::TxnKind::RevRegDef, registry->def_payload("r1"));
    }
  }

  ledger::Receipt submit(ledger::TxnKind kind, const Json& payload) {
    return t.ledger->submit(ledger::make_request(kind, payload, issuer.did, issuer.keys));
  }

  Credential issue_to(const crypto::PublicKey& holder_key, std::map<std::string, std::string> values = pid_sample()) {
    return issue(cred_def, issuer_keys, kPidSchemaAttrs, registry ? &*registry : nullptr, holder_key, values);
  }

  void revoke(std::uint32_t index) {
    submit(ledger::TxnKind::RevRegEntry, rev_reg_entry_payload(registry->revoke(index)));
    registry->clear_pending();
  }

  std::optional<RevocationSnapshot> snapshot(std::optional<std::int64_t> at = std::nullopt) {
    if (!registry) return std::nullopt;
    return RevocationSnapshot{t.ledger->get_rev_reg_def(registry->id()), t.ledger->get_rev_reg(registry->id(), at)};
  }

  VerifierContext ctx() { return {*t.ledger, *t.clock, 120000}; }

  Presentation present_now(const Credential& c, const PresentationRequest& req) {
    return present(c, req, holder.keys, snapshot(), t.clock->now_ms());
  }
};

// A cred def the holder made up for itself and never wrote to the ledger.
inline ledger::CredDefRecord unregistered_cred_def(const IssuerWorld& w, const crypto::KeyPair& keys) {
  auto d = w.cred_def;
  d.id = ledger::cred_def_id(w.holder.did, 999, "self");
  d.issuer_did = w.holder.did;
  d.issuer_public_key = keys.public_key;
  d.supports_revocation = false;
  return d;
}

inline VerificationResult run_verify(IssuerWorld& w, const Presentation& p, const PresentationRequest& req) {
  return verify(p, req, w.ctx());
}

inline Digest oracle_registry_root(const crypto::Salt& salt, std::uint32_t max, const std::set<std::uint32_t>& revoked) {
  std::vector<Digest> leaves;
  for (std::uint32_t i = 0; i < max; ++i) leaves.push_back(oracle_status_leaf(salt, i, revoked.contains(i)));
  return oracle_root(leaves);
}

// Every scalar leaf of a JSON document, addressed by JSON pointer.
inline void collect_leaves(const Json& j, const std::string& path, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_leaves(v, path + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], path + "/" + std::to_string(i), out);
  } else {
    out.push_back(path);
  }
}

inline std::vector<Json> mutations_of(const Json& leaf) {
  std::vector<Json> out;
  if (leaf.is_string()) {
    auto s = leaf.get<std::string>();
    if (!s.empty()) {
      // flip one character in the middle and one at the end
      for (std::size_t pos : {s.size() / 2, s.size() - 1}) {
        auto m = s;
        m[pos] = m[pos] == 'A' ? 'B' : 'A';
        out.emplace_back(m);
      }
    }
    out.emplace_back(s + "x");
    out.emplace_back("");
  } else if (leaf.is_number_unsigned() || leaf.is_number_integer()) {
    out.emplace_back(leaf.get<std::int64_t>() + 1);
    if (leaf.get<std::int64_t>() > 0) out.emplace_back(leaf.get<std::int64_t>() - 1);
    out.emplace_back("0");
  } else if (leaf.is_null()) {
    out.emplace_back(0);
  } else {
    out.emplace_back(nullptr);
  }
  return out;
}


}  // namespace ssi::testing
