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
#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include "acceptance/acceptance.hpp"
#include "ssi/agent/transport.hpp"
#include "ssi/agent/wallet.hpp"
#include "ssi/authz/provider.hpp"
#include "ssi/common/encoding.hpp"
#include "support/agent_world.hpp"
#include "support/issuer_world.hpp"

namespace ssi::acceptance {

using namespace ssi::testing;

namespace {

constexpr int kSubsetsPerSize = 500;
constexpr int kThiefKeys = 50;
constexpr int kRuleRounds = 500;

Digest oracle_fold(Digest running, const crypto::MerkleProof& proof) {
  for (const auto& s : proof.path) {
    Bytes buf{0x02};
    const auto& l = s.side == crypto::Side::Left ? s.sibling : running;
    const auto& r = s.side == crypto::Side::Left ? running : s.sibling;
    buf.insert(buf.end(), l.begin(), l.end());
    buf.insert(buf.end(), r.begin(), r.end());
    running = oracle_sha256(buf);
  }
  return running;
}

agent::PresentationExchange verified_exchange(std::map<std::string, std::string> disclosed, const std::string& cd) {
  agent::PresentationExchange ex;
  ex.pres_ex_id = "px-accept";
  ex.role = agent::ExchangeRole::Initiator;
  ex.state = agent::PresExState::VerifiedTrue;
  ex.request.cred_def_id = cd;
  anoncreds::VerificationResult r;
  r.verified = true;
  r.reason = anoncreds::VerifyReason::Ok;
  r.disclosed = std::move(disclosed);
  ex.result = r;
  return ex;
}

authz::AuthzRules clinic_rules(const std::string& cd) {
  authz::AuthzRules r;
  r.rules.push_back({cd, {}, {{"designation", "physician"}}, {"clinician"}});
  r.resources.push_back({"patient-records", {"clinician"}});
  return r;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

std::vector<std::string> conn_states(const agent::Agent& a) {
  std::vector<std::string> out;
  for (const auto& c : a.connections()) out.push_back(c.conn_id + ":" + std::string(agent::to_string(c.state)));
  return out;
}

}  // namespace

Verdict criterion_accumulator() {
  Checks c;
  std::mt19937 rng(4471);
  std::size_t witnesses = 0, stale = 0;
  for (std::uint32_t max : {8u, 64u}) {
    for (int trial = 0; trial < kSubsetsPerSize; ++trial) {
      const auto tag = "max " + std::to_string(max) + " trial " + std::to_string(trial);
      auto reg = anoncreds::RevocationRegistry::create("acc-" + std::to_string(trial), "cd", max);
      for (std::uint32_t i = 0; i < max; ++i) reg.allocate();
      std::vector<crypto::MerkleProof> before;
      for (std::uint32_t i = 0; i < max; ++i) before.push_back(reg.witness(i));

      std::vector<std::uint32_t> order(max);
      std::iota(order.begin(), order.end(), 0u);
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(std::uniform_int_distribution<std::uint32_t>(0, max)(rng));
      const std::set<std::uint32_t> revoked(order.begin(), order.end());
      for (auto i : order) reg.revoke(i);

      const auto acc = reg.accumulator();
      c.expect(acc == oracle_registry_root(reg.salt(), max, revoked), tag + ": accumulator vs brute force");

      ledger::RevRegDefRecord def;
      def.id = reg.id();
      def.cred_def_id = reg.cred_def_id();
      def.max_cred_num = max;
      def.salt = reg.salt();
      def.initial_accumulator = oracle_registry_root(reg.salt(), max, {});
      ledger::RevRegState state;
      state.id = reg.id();
      state.accumulator = acc;
      state.revoked = revoked;
      state.seq_no = 1;
      const anoncreds::RevocationSnapshot snap{def, state};

      for (std::uint32_t i = 0; i < max; ++i) {
        const auto active = anoncreds::revocation_leaf(reg.salt(), i, false);
        c.expect(active == oracle_status_leaf(reg.salt(), i, false), tag + ": status leaf");
        if (revoked.contains(i)) {
          c.expect(!crypto::merkle_verify(acc, active, before[i]) && oracle_fold(active, before[i]) != acc,
                   tag + ": pre-revocation witness still verifies for " + std::to_string(i));
          c.expect(!crypto::merkle_verify(acc, active, reg.witness(i)), tag + ": revoked leaf proves active");
          c.expect_error(ErrorCode::CredentialRevoked, [&] { anoncreds::refresh_witness(snap, i); },
                         tag + ": refresh of revoked " + std::to_string(i));
          ++stale;
        } else {
          const auto w = reg.witness(i);
          c.expect(crypto::merkle_verify(acc, active, w) && oracle_fold(active, w) == acc,
                   tag + ": witness for " + std::to_string(i));
          try {
            const auto h = anoncreds::refresh_witness(snap, i);
            c.expect(h.accumulator == acc && oracle_fold(active, h.proof) == acc,
                     tag + ": refreshed witness for " + std::to_string(i));
          } catch (const Error& e) {
            c.expect(false, tag + ": refresh " + e.what());
          }
          ++witnesses;
        }
      }
    }
  }
  return c.verdict(std::to_string(2 * kSubsetsPerSize) + " random subsets at max 8 and 64 match the brute-force root; " +
                   std::to_string(witnesses) + " live witnesses verify, " + std::to_string(stale) +
                   " revoked ones fail");
}

Verdict criterion_security() {
  Checks c;
  std::vector<std::string> done;

  // forged issuer: self-made cred defs
  {
    IssuerWorld w;
    const auto own = crypto::generate_keypair();
    const auto fake = unregistered_cred_def(w, own);
    const auto cred = anoncreds::issue(fake, own, kPidSchemaAttrs, nullptr, w.holder.keys.public_key, pid_sample());
    const auto req = anoncreds::new_presentation_request(fake.id, {"fullName", "designation"});
    const auto r = run_verify(w, w.present_now(cred, req), req);
    c.expect(!r.verified && r.reason == anoncreds::VerifyReason::UnknownCredDef, "unregistered cred def");

    auto def = w.cred_def;
    def.issuer_public_key = own.public_key;
    def.supports_revocation = false;
    const auto posing = anoncreds::issue(def, own, kPidSchemaAttrs, nullptr, w.holder.keys.public_key, pid_sample());
    const auto req2 = anoncreds::new_presentation_request(w.cred_def.id, {"fullName"});
    const auto r2 = run_verify(w, anoncreds::present(posing, req2, w.holder.keys, std::nullopt, w.t.clock->now_ms()), req2);
    c.expect(!r2.verified && r2.reason == anoncreds::VerifyReason::IssuerSignatureInvalid, "real id, wrong key");
    done.push_back("forged issuer");
  }

  // tampering: every scalar field of an honest presentation, and every key removed
  int mutated = 0;
  {
    IssuerWorld w;
    w.issue_to(new_identity().keys.public_key);
    const auto cred = w.issue_to(w.holder.keys.public_key);
    const auto req = anoncreds::new_presentation_request(w.cred_def.id, {"fullName", "licenseNumber"});
    const auto honest = anoncreds::to_json(w.present_now(cred, req));
    c.expect(anoncreds::verify_json(honest, req, w.ctx()).verified, "honest presentation verifies");
    std::vector<std::string> leaves;
    collect_leaves(honest, "", leaves);
    for (const auto& path : leaves) {
      const Json::json_pointer ptr(path);
      for (const auto& m : mutations_of(honest[ptr])) {
        auto bad = honest;
        bad[ptr] = m;
        c.expect(!anoncreds::verify_json(bad, req, w.ctx()).verified, "mutation at " + path + " = " + m.dump());
        ++mutated;
      }
    }
    for (const auto& [key, value] : honest.items()) {
      auto removed = honest;
      removed.erase(key);
      c.expect(!anoncreds::verify_json(removed, req, w.ctx()).verified, "removed " + key);
      ++mutated;
    }

    // stolen credential: signed by anyone but the bound holder
    const auto req1 = anoncreds::new_presentation_request(w.cred_def.id, {"fullName"});
    const auto p = w.present_now(cred, req1);
    for (int i = 0; i < kThiefKeys; ++i) {
      const auto thief = crypto::generate_keypair();
      auto resigned = p;
      resigned.holder_signature =
          crypto::sign(thief, anoncreds::holder_challenge(p.credential_root, req1.nonce, p.timestamp));
      c.expect(run_verify(w, resigned, req1).reason == anoncreds::VerifyReason::HolderSignatureInvalid, "thief sig");
      resigned.holder_binding_key = thief.public_key;
      c.expect(run_verify(w, resigned, req1).reason == anoncreds::VerifyReason::HolderSignatureInvalid,
               "thief binding key");
    }
    done.push_back(std::to_string(mutated) + " tamperings");
    done.push_back(std::to_string(kThiefKeys) + " thief keys");
  }

  // replayed DIDComm envelopes
  {
    AgentWorld w;
    auto& a = w.spawn("alice");
    auto& b = w.spawn("bob");
    std::mutex mu;
    std::vector<std::pair<std::string, Json>> captured;
    b.transport().set_tap([&](const std::string& ep, const Json& env) {
      std::lock_guard lock(mu);
      captured.emplace_back(ep, env);
    });
    AgentWorld::connect(a, b);
    const auto sa = conn_states(a), sb = conn_states(b);
    std::lock_guard lock(mu);
    c.expect(captured.size() >= 2, "envelopes captured");
    for (const auto& [ep, env] : captured) {
      c.expect(code_of([&] { agent::Transport::post_envelope(ep, env); }) == ErrorCode::ReplayRejected,
               "replayed envelope");
    }
    c.expect(conn_states(a) == sa && conn_states(b) == sb, "replay left connection state unchanged");
    done.push_back(std::to_string(captured.size()) + " replayed envelopes");
  }

  // tokens: single use, and only for exchanges that ended VERIFIED_TRUE
  {
    const std::string cd = "did:example:3:CL:12:default";
    const auto clock = std::make_shared<ManualClock>();
    authz::Provider p(crypto::generate_keypair(), clinic_rules(cd), clock);
    const auto token = p.authorize(verified_exchange({{"designation", "physician"}}, cd), "did:peer:x");
    c.expect(code_of([&] { p.validate_token(token); }) == static_cast<ErrorCode>(-1), "first use accepted");
    c.expect(code_of([&] { p.validate_token(token); }) == ErrorCode::ReplayRejected, "token reuse");

    int combos = 0;
    for (auto role : {agent::ExchangeRole::Initiator, agent::ExchangeRole::Responder}) {
      for (int st = 0; st <= static_cast<int>(agent::PresExState::Declined); ++st) {
        for (bool ok : {true, false}) {
          auto ex = verified_exchange({{"designation", "physician"}}, cd);
          ex.role = role;
          ex.state = static_cast<agent::PresExState>(st);
          ex.result->verified = ok;
          const bool token_expected =
              role == agent::ExchangeRole::Initiator && ex.state == agent::PresExState::VerifiedTrue && ok;
          const auto got = code_of([&] { p.authorize(ex, "did:x"); });
          c.expect(got == (token_expected ? static_cast<ErrorCode>(-1) : ErrorCode::NotVerified),
                   "authorize role " + std::to_string(static_cast<int>(role)) + " state " + std::to_string(st));
          ++combos;
        }
      }
    }
    auto no_result = verified_exchange({}, cd);
    no_result.result.reset();
    c.expect(code_of([&] { p.authorize(no_result, "did:x"); }) == ErrorCode::NotVerified, "exchange without result");
    done.push_back("token replay and " + std::to_string(combos) + " exchange outcomes");

    // roles granted equal the union of matching rules, compared against an oracle
    std::mt19937 rng(20261016);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const std::vector<std::string> attrs = {"a", "b", "c", "d"}, values = {"x", "y"};
    const std::vector<std::string> pool = {"r1", "r2", "r3", "r4", "r5"}, cds = {"cd1", "cd2"};
    for (int round = 0; round < kRuleRounds; ++round) {
      authz::AuthzRules rules;
      rules.rules.resize(1 + pick(5));
      for (auto& r : rules.rules) {
        r.cred_def_id = cds[pick(2)];
        for (const auto& a : attrs) {
          if (pick(4) == 0) r.required_attrs.push_back(a);
          if (pick(5) == 0) r.attr_equals[a] = values[pick(2)];
        }
        r.grants.push_back(pool[pick(5)]);
        if (pick(2)) r.grants.push_back(pool[pick(5)]);
      }
      std::map<std::string, std::string> disclosed;
      for (const auto& a : attrs) {
        if (pick(3) != 0) disclosed[a] = values[pick(2)];
      }
      const auto on = cds[pick(2)];
      std::set<std::string> want;
      for (const auto& r : rules.rules) {
        bool match = r.cred_def_id == on;
        for (const auto& a : r.required_attrs) match = match && disclosed.contains(a);
        for (const auto& [a, v] : r.attr_equals) match = match && disclosed.contains(a) && disclosed.at(a) == v;
        if (match) want.insert(r.grants.begin(), r.grants.end());
      }
      authz::Provider rp(crypto::generate_keypair(), rules, clock);
      if (want.empty()) {
        c.expect(code_of([&] { rp.authorize(verified_exchange(disclosed, on), "did:x"); }) == ErrorCode::NoRole,
                 "round " + std::to_string(round) + ": no matching rule");
      } else {
        const auto claims = rp.introspect(rp.authorize(verified_exchange(disclosed, on), "did:x"));
        c.expect(claims.roles == std::vector<std::string>(want.begin(), want.end()),
                 "round " + std::to_string(round) + ": roles");
      }
    }
    done.push_back(std::to_string(kRuleRounds) + " random rule sets");
  }

  std::string summary = "rejected:";
  for (const auto& d : done) summary += " " + d + ";";
  return c.verdict(summary);
}

Verdict criterion_wallet() {
  Checks c;
  const std::string sentinel = "SENTINEL-Qx81vLm";
  auto s = issue_one(true, sentinel);
  auto& holder = *s->holder;
  const auto data = holder.wallet().snapshot();
  c.expect(!data.credentials.empty(), "holder stored a credential");
  const auto blob = holder.export_wallet("correct horse battery");
  const std::string raw(blob.begin(), blob.end());

  c.expect(raw.find(sentinel) == std::string::npos, "sentinel value in the blob");
  for (const auto& name : kPidAttrs) c.expect(raw.find(name) == std::string::npos, "attribute name " + name);
  for (const auto& [name, value] : pid_values(sentinel)) c.expect(raw.find(value) == std::string::npos, "value " + value);
  for (const auto& [did, kp] : data.keys) {
    c.expect(raw.find(std::string(kp.seed.begin(), kp.seed.end())) == std::string::npos, "raw seed");
    c.expect(raw.find(encoding::base64url(kp.seed)) == std::string::npos, "base64url seed");
    c.expect(raw.find(encoding::hex(kp.seed)) == std::string::npos, "hex seed");
    c.expect(raw.find(did) == std::string::npos, "DID " + did);
  }

  const auto back = agent::import_wallet(blob, "correct horse battery");
  c.expect(agent::to_json(back) == agent::to_json(data), "import reproduces the wallet");
  agent::AgentOptions o;
  o.label = "restored";
  o.clock = s->w.t.clock;
  agent::Agent restored(o, s->w.t.ledger, back);
  c.expect(restored.credentials().size() == holder.credentials().size() &&
               restored.credentials().at(0).credential.attributes.at("name").value == sentinel,
           "restored agent holds the credential");

  c.expect_error(ErrorCode::AuthenticationFailure, [&] { agent::import_wallet(blob, "correct horse batterz"); },
                 "wrong passphrase");
  c.expect_error(ErrorCode::AuthenticationFailure, [&] { agent::import_wallet(blob, ""); }, "empty passphrase");
  int flips = 0;
  for (std::size_t i = 0; i < blob.size(); i += std::max<std::size_t>(1, blob.size() / 64)) {
    auto bad = blob;
    bad[i] ^= 0x01;
    const auto code = code_of([&] { agent::import_wallet(bad, "correct horse battery"); });
    c.expect(code == ErrorCode::AuthenticationFailure || code == ErrorCode::Malformed,
             "flipped byte " + std::to_string(i));
    ++flips;
  }
  return c.verdict("export/import round trip equal; wrong passphrase AuthenticationFailure; " +
                   std::to_string(blob.size()) + "-byte blob holds no values, names, seeds or DIDs; " +
                   std::to_string(flips) + " byte flips refused");
}

}  // namespace ssi::acceptance
