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
#include <doctest.h>

#include <atomic>
#include <set>
#include <thread>

#include "support/acl_matrix.hpp"
#include "support/ledger_fixture.hpp"
#include "ssi/common/error.hpp"
#include "ssi/ledger/acl.hpp"
#include "ssi/ledger/genesis.hpp"
#include "ssi/ledger/replay.hpp"

using namespace ssi;
using namespace ssi::ledger;
using namespace ssi::testing;

namespace {

Json schema_payload(const std::string& name) {
  return {{"name", name}, {"version", "1.0"}, {"attrNames", {"a", "b"}}};
}

std::map<std::uint64_t, Digest> seq_hashes(const LedgerPool& pool, std::size_t node) {
  std::map<std::uint64_t, Digest> out;
  for (const auto& t : pool.audit_log(node)) out[t.seq_no] = txn_hash(t);
  return out;
}

}  // namespace

TEST_CASE("bootstrap sizes and quorum") {
  SUBCASE("4 nodes -> f = 1") {
    auto t = make_test_pool(4);
    CHECK(t.pool->size() == 4);
    CHECK(t.pool->max_faulty() == 1);
    CHECK(t.pool->quorum() == 3);
    const auto state = t.pool->snapshot();
    CHECK(state.nodes.size() == 4);
    CHECK(state.pool_seq.size() == 4);
    CHECK(state.config.at("replayWindowMs") == 120000);
    CHECK(state.nyms.at(t.steward.did).role == Role::Steward);
  }
  SUBCASE("7 nodes -> f = 2, quorum 5") {
    auto t = make_test_pool(7);
    CHECK(t.pool->max_faulty() == 2);
    CHECK(t.pool->quorum() == 5);
  }
  SUBCASE("3 nodes -> InsufficientNodes") {
    const auto g = make_genesis(3);
    CHECK(error_code_of([&] { LedgerPool::bootstrap(g, node_keys(g)); }) == ErrorCode::InsufficientNodes);
  }
  SUBCASE("5 nodes is not 3f+1") {
    const auto g = make_genesis(5);
    CHECK(error_code_of([&] { LedgerPool::bootstrap(g, node_keys(g)); }) == ErrorCode::InvalidGenesis);
  }
  SUBCASE("duplicate alias -> InvalidGenesis") {
    auto g = make_genesis(4);
    g.nodes[3].alias = g.nodes[1].alias;
    CHECK(error_code_of([&] { LedgerPool::bootstrap(g, node_keys(g)); }) == ErrorCode::InvalidGenesis);
  }
  SUBCASE("node key mismatch -> InvalidGenesis") {
    const auto g = make_genesis(4);
    auto keys = node_keys(g);
    keys["Node2"] = crypto::generate_keypair();
    CHECK(error_code_of([&] { LedgerPool::bootstrap(g, keys); }) == ErrorCode::InvalidGenesis);
  }
}

TEST_CASE("genesis file round trip carries the signature scheme header") {
  const auto g = make_genesis(4);
  const auto text = format_genesis(g);
  CHECK(text.rfind("{\"hash\":\"sha256\",\"signatureScheme\":\"ed25519\"}\n", 0) == 0);
  const auto parsed = parse_genesis(text);
  REQUIRE(parsed.nodes.size() == 4);
  CHECK(parsed.nodes[2].alias == "Node3");
  CHECK(parsed.nodes[2].node_verkey == g.nodes[2].node_verkey);
  CHECK(parsed.nodes[2].services == std::vector<std::string>{"VALIDATOR"});
  CHECK(error_code_of([] { parse_genesis("{not json"); }) == ErrorCode::InvalidGenesis);
}

TEST_CASE("steward onboards an endorser and every node sees it") {
  auto t = make_test_pool();
  const auto gov = new_identity();
  const auto receipt = write_nym(*t.ledger, t.steward, gov, Role::Endorser);
  CHECK(receipt.seq_no == t.pool->genesis_size() + 1);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto nym = t.pool->read([&](const LedgerState& s) { return s.nyms.at(gov.did); }, i);
    CHECK(nym.role == Role::Endorser);
    CHECK(nym.added_by == t.steward.did);
    CHECK(nym.seq_no == receipt.seq_no);
  }
}

TEST_CASE("write failures") {
  auto t = make_test_pool();
  const auto nobody = onboard(t, Role::None);

  SUBCASE("role NONE cannot publish a schema") {
    CHECK(error_code_of([&] {
            t.ledger->submit(make_request(TxnKind::Schema, schema_payload("X"), nobody.did, nobody.keys));
          }) == ErrorCode::Unauthorized);
  }
  SUBCASE("unknown author is Unauthorized") {
    const auto stranger = new_identity();
    CHECK(error_code_of([&] { write_nym(*t.ledger, stranger, new_identity(), std::nullopt); }) ==
          ErrorCode::Unauthorized);
  }
  SUBCASE("signature mismatch is InvalidSignature") {
    auto req = make_request(TxnKind::Nym, {{"dest", nobody.did}, {"verkey", crypto::verkey_string(nobody.keys.public_key)}},
                            t.steward.did, t.steward.keys);
    req.payload["role"] = "TRUSTEE";
    CHECK(error_code_of([&] { t.ledger->submit(req); }) == ErrorCode::InvalidSignature);
  }
  SUBCASE("resubmitting a signed request is DuplicateRequest") {
    const auto endorser = onboard(t, Role::Endorser);
    const auto req = make_request(TxnKind::Schema, schema_payload("Dup"), endorser.did, endorser.keys);
    t.ledger->submit(req);
    CHECK(error_code_of([&] { t.ledger->submit(req); }) == ErrorCode::DuplicateRequest);
  }
  SUBCASE("DID must be derived from its verkey") {
    auto a = new_identity();
    a.did = new_identity().did;
    CHECK(error_code_of([&] { write_nym(*t.ledger, t.steward, a, Role::None); }) == ErrorCode::InvalidTransaction);
  }
  SUBCASE("revoked set can only grow") {
    const auto issuer = onboard(t, Role::Endorser);
    auto submit = [&](TxnKind k, Json p) { return t.ledger->submit(make_request(k, p, issuer.did, issuer.keys)); };
    const auto s = submit(TxnKind::Schema, schema_payload("Grow"));
    const auto sid = schema_id(issuer.did, "Grow", "1.0");
    submit(TxnKind::CredDef, {{"schemaId", sid}, {"tag", "t"}, {"issuerPublicKey", bytes_json(issuer.keys.public_key)},
                              {"supportsRevocation", true}});
    const auto cd = cred_def_id(issuer.did, s.seq_no, "t");
    submit(TxnKind::RevRegDef, {{"credDefId", cd}, {"tag", "r"}, {"maxCredNum", 8}, {"salt", bytes_json(Bytes(16, 1))},
                                {"initialAccumulator", bytes_json(Bytes(32, 2))}});
    const auto rid = rev_reg_id(issuer.did, cd, "r");
    submit(TxnKind::RevRegEntry, {{"revRegId", rid}, {"accumulator", bytes_json(Bytes(32, 3))}, {"revokedIndices", {1, 2}}});
    CHECK(error_code_of([&] {
            submit(TxnKind::RevRegEntry, {{"revRegId", rid}, {"accumulator", bytes_json(Bytes(32, 4))}, {"revokedIndices", {2}}});
          }) == ErrorCode::InvalidTransaction);
    CHECK(error_code_of([&] {
            submit(TxnKind::RevRegEntry, {{"revRegId", rid}, {"accumulator", bytes_json(Bytes(32, 4))}, {"revokedIndices", {9}}});
          }) == ErrorCode::InvalidTransaction);
    const auto other = onboard(t, Role::Endorser);
    CHECK(error_code_of([&] {
            t.ledger->submit(make_request(TxnKind::RevRegEntry,
                                          {{"revRegId", rid}, {"accumulator", bytes_json(Bytes(32, 4))}, {"revokedIndices", {1, 2, 3}}},
                                          other.did, other.keys));
          }) == ErrorCode::Unauthorized);
  }
}

TEST_CASE("exhaustive ACL matrix over role x transaction kind") {
  const auto cells = run_acl_matrix();
  CHECK(cells.size() == 32);
  for (const auto& c : cells) {
    CAPTURE(c.role);
    CAPTURE(c.kind);
    CHECK(c.acl == c.expected);
    CHECK(c.committed == c.expected);
    if (!c.expected) CHECK(c.error == "Unauthorized");
  }
}

TEST_CASE("fault tolerance at the quorum boundary") {
  for (std::size_t n : {4u, 7u}) {
    CAPTURE(n);
    auto t = make_test_pool(n);
    const auto f = t.pool->max_faulty();
    for (std::size_t i = 0; i < f; ++i) t.pool->stop_node(n - 1 - i);
    CHECK_NOTHROW(onboard(t, Role::Endorser));
    t.pool->stop_node(n - 1 - f);
    CHECK(error_code_of([&] { onboard(t, Role::Endorser); }) == ErrorCode::NoConsensus);
    // restart one node: quorum again reachable and the returning node catches up
    t.pool->start_node(n - 1 - f);
    const auto id = onboard(t, Role::Endorser);
    CHECK(t.pool->read([&](const LedgerState& s) { return s.nyms.contains(id.did); }, n - 1 - f));
    for (std::size_t i = 0; i < f; ++i) t.pool->start_node(n - 1 - i);
    for (std::size_t i = 1; i < n; ++i) CHECK(seq_hashes(*t.pool, i) == seq_hashes(*t.pool, 0));
  }
}

TEST_CASE("leader stopped means no writes") {
  auto t = make_test_pool();
  t.pool->stop_node(0);
  CHECK(error_code_of([&] { onboard(t, Role::Endorser); }) == ErrorCode::NoConsensus);
  CHECK_NOTHROW(t.ledger->get_nym(t.steward.did));
}

TEST_CASE("dropped prepares still commit and the replica catches up on commit") {
  auto t = make_test_pool();
  t.pool->bus().set_drop([](std::size_t node, MessageBus::Phase p) { return node == 2 && p == MessageBus::Phase::Prepare; });
  const auto a = onboard(t, Role::Endorser);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(t.pool->read([&](const LedgerState& s) { return s.nyms.contains(a.did); }, i));
  }
  t.pool->bus().set_drop([](std::size_t node, MessageBus::Phase) { return node >= 2; });
  CHECK(error_code_of([&] { onboard(t, Role::Endorser); }) == ErrorCode::NoConsensus);
  t.pool->bus().set_drop(nullptr);
  CHECK_NOTHROW(onboard(t, Role::Endorser));
}

TEST_CASE("append-only: root changes on every commit, committed entries never change") {
  auto t = make_test_pool();
  std::set<Digest> roots;
  std::vector<Transaction> before;
  for (int i = 0; i < 10; ++i) {
    before = t.pool->audit_log();
    const auto r = write_nym(*t.ledger, t.steward, new_identity(), Role::None);
    CHECK(roots.insert(r.root_hash).second);
    const auto after = t.pool->audit_log();
    REQUIRE(after.size() == before.size() + 1);
    for (std::size_t k = 0; k < before.size(); ++k) CHECK(txn_hash(after[k]) == txn_hash(before[k]));
    CHECK(after.back().prev_hash == txn_hash(before.back()));
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(t.pool->read([](const LedgerState& s) { return s.head_hash(); }, n) == r.root_hash);
    }
  }
}

TEST_CASE("reads") {
  auto t = make_test_pool();
  CHECK(error_code_of([&] { t.ledger->get_nym(new_identity().did); }) == ErrorCode::NotFound);
  CHECK(error_code_of([&] { t.ledger->get_schema("nope:2:x:1.0"); }) == ErrorCode::NotFound);
  CHECK(error_code_of([&] { t.ledger->get_cred_def("nope"); }) == ErrorCode::NotFound);
  CHECK(error_code_of([&] { t.ledger->get_rev_reg("nope", std::nullopt); }) == ErrorCode::NotFound);

  const auto issuer = onboard(t, Role::Endorser);
  const Json payload = {{"name", "PID"}, {"version", "1.0"}, {"attrNames", {"licenseNumber", "fullName", "designation"}}};
  t.ledger->submit(make_request(TxnKind::Schema, payload, issuer.did, issuer.keys));
  const auto schema = t.ledger->get_schema(schema_id(issuer.did, "PID", "1.0"));
  CHECK(schema.name == "PID");
  CHECK(schema.version == "1.0");
  CHECK(schema.attr_names == std::vector<std::string>{"licenseNumber", "fullName", "designation"});
  CHECK(schema.issuer_did == issuer.did);
  CHECK(replay_window_ms(*t.ledger) == 120000);
}

TEST_CASE("get_rev_reg at a time before a revocation matches a replay up to that time") {
  auto t = make_test_pool();
  const auto issuer = onboard(t, Role::Endorser);
  auto submit = [&](TxnKind k, Json p) { return t.ledger->submit(make_request(k, p, issuer.did, issuer.keys)); };
  const auto s = submit(TxnKind::Schema, schema_payload("R"));
  const auto sid = schema_id(issuer.did, "R", "1.0");
  submit(TxnKind::CredDef, {{"schemaId", sid}, {"tag", "t"}, {"issuerPublicKey", bytes_json(issuer.keys.public_key)},
                            {"supportsRevocation", true}});
  const auto cd = cred_def_id(issuer.did, s.seq_no, "t");
  submit(TxnKind::RevRegDef, {{"credDefId", cd}, {"tag", "r"}, {"maxCredNum", 4}, {"salt", bytes_json(Bytes(16, 1))},
                              {"initialAccumulator", bytes_json(Bytes(32, 2))}});
  const auto rid = rev_reg_id(issuer.did, cd, "r");
  t.clock->advance(5000);
  const auto before = t.clock->now_ms() - 1;
  const auto rev = submit(TxnKind::RevRegEntry, {{"revRegId", rid}, {"accumulator", bytes_json(Bytes(32, 9))}, {"revokedIndices", {1}}});

  // oracle: replay only the entries committed at or before the query time
  auto log = t.pool->audit_log();
  std::vector<Transaction> prefix;
  for (const auto& e : log) {
    if (e.txn_time <= before) prefix.push_back(e);
  }
  const auto replayed = replay(prefix);
  const auto oracle = rev_reg_at(replayed, rid, std::nullopt);

  const auto at_before = t.ledger->get_rev_reg(rid, before);
  CHECK(at_before.revoked.empty());
  CHECK(at_before.accumulator == oracle.accumulator);
  CHECK(at_before.seq_no == oracle.seq_no);

  const auto now = t.ledger->get_rev_reg(rid, std::nullopt);
  CHECK(now.revoked == std::set<std::uint32_t>{1});
  CHECK(now.seq_no == rev.seq_no);
  CHECK(t.ledger->get_rev_reg(rid, rev.txn_time).seq_no == rev.seq_no);
}

TEST_CASE("concurrent submitters get a single total order") {
  auto t = make_test_pool();
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int w = 0; w < 4; ++w) {
    threads.emplace_back([&] {
      for (int i = 0; i < 10; ++i) {
        write_nym(*t.ledger, t.steward, new_identity(), Role::None);
        ++ok;
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(ok == 40);
  for (std::size_t n = 1; n < 4; ++n) CHECK(seq_hashes(*t.pool, n) == seq_hashes(*t.pool, 0));
  CHECK_NOTHROW(replay(t.pool->audit_log()));
}
