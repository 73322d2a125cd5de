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

#include "support/oracles.hpp"

#include <sodium.h>

#include <set>

#include "ssi/common/encoding.hpp"
#include "ssi/common/error.hpp"
#include "ssi/crypto/commitment.hpp"
#include "ssi/crypto/envelope.hpp"
#include "ssi/crypto/hash.hpp"
#include "ssi/crypto/keys.hpp"
#include "ssi/crypto/merkle.hpp"

using namespace ssi;
using namespace ssi::crypto;

using namespace ssi::testing;

namespace {

Digest random_digest() {
  Digest d{};
  randombytes_buf(d.data(), d.size());
  return d;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ssi::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("generate_keypair is deterministic in the seed") {
  const Seed zero{};
  const auto a = generate_keypair(zero);
  const auto b = generate_keypair(zero);
  CHECK(a.public_key == b.public_key);
  CHECK(a.secret_key == b.secret_key);
}

TEST_CASE("1000 random seeds give 1000 distinct public keys") {
  std::set<PublicKey> keys;
  for (int i = 0; i < 1000; ++i) keys.insert(generate_keypair().public_key);
  CHECK(keys.size() == 1000);
}

TEST_CASE("seed of the wrong length is InvalidSeed") {
  const Bytes short_seed(16, 0x11);
  CHECK(code_of([&] { generate_keypair(ByteView(short_seed)); }) == ErrorCode::InvalidSeed);
  const Bytes long_seed(33, 0x11);
  CHECK(code_of([&] { generate_keypair(ByteView(long_seed)); }) == ErrorCode::InvalidSeed);
}

TEST_CASE("DID is base58 of the first 16 key bytes, verkey of all 32") {
  const auto kp = generate_keypair();
  CHECK(encoding::from_base58(did_from_key(kp.public_key)) == Bytes(kp.public_key.begin(), kp.public_key.begin() + 16));
  CHECK(key_from_verkey(verkey_string(kp.public_key)) == kp.public_key);
}

TEST_CASE("sign and verify") {
  const auto kp = generate_keypair();
  const Bytes msg = to_bytes("credential root bytes");
  const auto sig = sign(kp, msg);
  CHECK(verify(kp.public_key, msg, sig));

  SUBCASE("every single-bit flip of the message fails") {
    for (std::size_t i = 0; i < msg.size() * 8; ++i) {
      Bytes m = msg;
      m[i / 8] ^= static_cast<std::uint8_t>(1u << (i % 8));
      CHECK_FALSE(verify(kp.public_key, m, sig));
    }
  }
  SUBCASE("100 unrelated keys all reject") {
    for (int i = 0; i < 100; ++i) CHECK_FALSE(verify(generate_keypair().public_key, msg, sig));
  }
  SUBCASE("malformed inputs return false rather than throw") {
    CHECK_FALSE(verify(ByteView(kp.public_key.data(), 31), msg, ByteView(sig)));
    CHECK_FALSE(verify(ByteView(kp.public_key), msg, ByteView(sig.data(), 10)));
  }
}

TEST_CASE("commitment digest is recomputable and salt dependent") {
  const auto c = commit("fullName", "Alice");
  CHECK(commitment_digest("fullName", "Alice", c.salt) == c.digest);
  CHECK(commitment_digest("fullName", "Alicf", c.salt) != c.digest);
  CHECK(commitment_digest("fullNam", "eAlice", c.salt) != c.digest);

  SUBCASE("hiding smoke property over 1000 salt pairs") {
    for (int i = 0; i < 1000; ++i) {
      const auto s1 = random_salt();
      const auto s2 = random_salt();
      if (s1 == s2) continue;
      CHECK(commitment_digest("a", "A", s1) != commitment_digest("a", "A", s2));
    }
  }
  SUBCASE("binding: 1e5 random (value, salt) trials never collide") {
    std::size_t hits = 0;
    for (int i = 0; i < 100000; ++i) {
      const auto salt = random_salt();
      const std::string value = (i % 2 == 0) ? "Alice" : "Alice" + std::to_string(i);
      if (salt == c.salt && value == "Alice") continue;
      if (commitment_digest("fullName", value, salt) == c.digest) ++hits;
    }
    CHECK(hits == 0);
  }
}

TEST_CASE("merkle root of a single leaf is H(0x02 || leaf || PAD)") {
  const auto leaf = random_digest();
  Bytes buf{0x02};
  append(buf, leaf);
  append(buf, oracle_sha256(to_bytes("EMPTY-LEAF")));
  CHECK(merkle_root(std::vector<Digest>{leaf}) == oracle_sha256(buf));
  CHECK(merkle_pad() == oracle_sha256(to_bytes("EMPTY-LEAF")));
}

TEST_CASE("merkle round trip for every leaf count 1..128") {
  for (std::size_t n = 1; n <= 128; ++n) {
    std::vector<Digest> leaves(n);
    for (auto& l : leaves) l = random_digest();
    const auto root = merkle_root(leaves);
    REQUIRE(root == oracle_root(leaves));
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < merkle_width(n)) ++depth;
    for (std::size_t i = 0; i < n; ++i) {
      const auto proof = merkle_prove(leaves, i);
      CHECK(proof.path.size() == depth);
      CHECK(merkle_verify(root, leaves[i], proof));
    }
  }
}

TEST_CASE("64-leaf tree: all indices verify, mutated tree rejects old proof") {
  std::vector<Digest> leaves(64);
  for (auto& l : leaves) l = random_digest();
  const auto root = merkle_root(leaves);
  for (std::size_t i = 0; i < 64; ++i) CHECK(merkle_verify(root, leaves[i], merkle_prove(leaves, i)));

  const auto proof3 = merkle_prove(leaves, 3);
  auto altered = leaves;
  altered[5][0] ^= 0xff;
  const auto altered_root = oracle_root(altered);
  CHECK(altered_root != root);
  CHECK_FALSE(merkle_verify(altered_root, leaves[3], proof3));
}

TEST_CASE("merkle proofs bind leaf index to path sides") {
  std::vector<Digest> leaves(8);
  for (auto& l : leaves) l = random_digest();
  const auto root = merkle_root(leaves);
  auto proof = merkle_prove(leaves, 2);
  proof.leaf_index = 3;
  CHECK_FALSE(merkle_verify(root, leaves[2], proof));
  proof = merkle_prove(leaves, 2);
  proof.path[1].side = proof.path[1].side == Side::Left ? Side::Right : Side::Left;
  CHECK_FALSE(merkle_verify(root, leaves[2], proof));
  proof = merkle_prove(leaves, 2);
  proof.leaf_index += 8;
  CHECK_FALSE(merkle_verify(root, leaves[2], proof));
  CHECK(merkle_proof_from_json(to_json(merkle_prove(leaves, 6))) == merkle_prove(leaves, 6));
}

TEST_CASE("merkle error paths") {
  std::vector<Digest> none;
  CHECK(code_of([&] { merkle_root(none); }) == ErrorCode::EmptyTree);
  std::vector<Digest> four(4, random_digest());
  CHECK(code_of([&] { merkle_prove(four, 4); }) == ErrorCode::IndexError);
}

TEST_CASE("MerkleTree point updates match a full rebuild") {
  std::vector<Digest> leaves(32);
  for (auto& l : leaves) l = random_digest();
  MerkleTree tree(leaves);
  for (int round = 0; round < 50; ++round) {
    const auto i = randombytes_uniform(32);
    leaves[i] = random_digest();
    tree.update(i, leaves[i]);
    CHECK(tree.root() == oracle_root(leaves));
  }
}

TEST_CASE("sealed envelopes") {
  const auto alice = generate_keypair();
  const auto bob = generate_keypair();
  const auto eve = generate_keypair();

  SUBCASE("empty payload round trips") {
    const auto env = seal(alice, bob.public_key, Bytes{}, 1000);
    CHECK(open(bob, env).empty());
  }
  SUBCASE("third party cannot open") {
    auto env = seal(alice, bob.public_key, to_bytes("hello"), 1000);
    CHECK(code_of([&] { open(eve, env); }) == ErrorCode::AuthenticationFailure);
    env.recipient_key = eve.public_key;
    CHECK(code_of([&] { open(eve, env); }) == ErrorCode::AuthenticationFailure);
  }
  SUBCASE("every single-byte ciphertext mutation is rejected") {
    const auto env = seal(alice, bob.public_key, to_bytes("short message"), 1000);
    for (std::size_t i = 0; i < env.ciphertext.size(); ++i) {
      for (std::uint8_t delta : {0x01, 0x80, 0xff}) {
        auto bad = env;
        bad.ciphertext[i] ^= delta;
        CHECK(code_of([&] { open(bob, bad); }) == ErrorCode::AuthenticationFailure);
      }
    }
  }
  SUBCASE("header fields are authenticated") {
    const auto env = seal(alice, bob.public_key, to_bytes("m"), 1000);
    auto bad = env;
    bad.timestamp_ms += 1;
    CHECK(code_of([&] { open(bob, bad); }) == ErrorCode::AuthenticationFailure);
    bad = env;
    bad.nonce[0] ^= 1;
    CHECK(code_of([&] { open(bob, bad); }) == ErrorCode::AuthenticationFailure);
    bad = env;
    bad.sender_key = eve.public_key;
    CHECK(code_of([&] { open(bob, bad); }) == ErrorCode::AuthenticationFailure);
  }
  SUBCASE("random payloads up to 64 KiB round trip and reject tampering") {
    for (std::size_t len : {1u, 17u, 1000u, 4096u, 65536u}) {
      Bytes msg(len);
      randombytes_buf(msg.data(), msg.size());
      const auto env = envelope_from_json(to_json(seal(alice, bob.public_key, msg, 42)));
      CHECK(open(bob, env) == msg);
      auto bad = env;
      bad.ciphertext[randombytes_uniform(static_cast<std::uint32_t>(bad.ciphertext.size()))] ^= 0x10;
      CHECK(code_of([&] { open(bob, bad); }) == ErrorCode::AuthenticationFailure);
    }
  }
  SUBCASE("nonces are fresh per seal") {
    std::set<Nonce> nonces;
    for (int i = 0; i < 200; ++i) nonces.insert(seal(alice, bob.public_key, to_bytes("x"), 1).nonce);
    CHECK(nonces.size() == 200);
  }
}
