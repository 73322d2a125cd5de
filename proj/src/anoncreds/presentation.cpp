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
#include "ssi/anoncreds/presentation.hpp"

#include <bit>
#include <set>

#include <sodium.h>

#include "ssi/anoncreds/schema.hpp"
#include "ssi/common/error.hpp"
#include "ssi/crypto/hash.hpp"

namespace ssi::anoncreds {

PresentationRequest new_presentation_request(std::string cred_def_id, std::vector<std::string> requested_attrs,
                                             std::optional<std::int64_t> non_revoked_at_time) {
  PresentationRequest r;
  randombytes_buf(r.nonce.data(), r.nonce.size());
  r.cred_def_id = std::move(cred_def_id);
  r.requested_attrs = std::move(requested_attrs);
  r.non_revoked_at_time = non_revoked_at_time;
  return r;
}

void check_request(const PresentationRequest& req, const std::vector<std::string>& schema_attrs) {
  if (req.requested_attrs.empty()) throw Error(ErrorCode::InvalidArgument, "no attributes requested");
  const std::set<std::string> known(schema_attrs.begin(), schema_attrs.end());
  std::set<std::string> seen;
  for (const auto& a : req.requested_attrs) {
    if (!known.contains(a)) throw Error(ErrorCode::InvalidArgument, "attribute " + a + " not in schema");
    if (!seen.insert(a).second) throw Error(ErrorCode::InvalidArgument, "attribute " + a + " requested twice");
  }
}

Json to_json(const PresentationRequest& r) {
  Json j = {{"nonce", bytes_json(r.nonce)}, {"credDefId", r.cred_def_id}, {"requestedAttrs", r.requested_attrs}};
  j["nonRevokedAtTime"] = r.non_revoked_at_time ? Json(*r.non_revoked_at_time) : Json(nullptr);
  return j;
}

PresentationRequest presentation_request_from_json(const Json& j) {
  try {
    PresentationRequest r;
    r.nonce = json_array<24>(j.at("nonce"));
    r.cred_def_id = j.at("credDefId").get<std::string>();
    r.requested_attrs = j.at("requestedAttrs").get<std::vector<std::string>>();
    if (j.contains("nonRevokedAtTime") && !j["nonRevokedAtTime"].is_null()) {
      r.non_revoked_at_time = j["nonRevokedAtTime"].get<std::int64_t>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("presentation request: ") + e.what());
  }
}

Json to_json(const Presentation& p) {
  Json revealed = Json::object();
  for (const auto& [name, a] : p.revealed) {
    revealed[name] = {{"value", a.value}, {"salt", bytes_json(a.salt)}, {"proof", crypto::to_json(a.proof)}};
  }
  return {{"credDefId", p.cred_def_id},
          {"revealed", std::move(revealed)},
          {"credentialRoot", bytes_json(p.credential_root)},
          {"issuerSignature", bytes_json(p.issuer_signature)},
          {"holderBindingKey", bytes_json(p.holder_binding_key)},
          {"holderBindingProof", crypto::to_json(p.holder_binding_proof)},
          {"revRegId", p.rev_reg_id},
          {"revocationRefProof", crypto::to_json(p.revocation_ref_proof)},
          {"nonRevocationProof", p.non_revocation ? to_json(*p.non_revocation) : Json(nullptr)},
          {"timestamp", p.timestamp},
          {"holderSignature", bytes_json(p.holder_signature)}};
}

Presentation presentation_from_json(const Json& j) {
  try {
    Presentation p;
    p.cred_def_id = j.at("credDefId").get<std::string>();
    for (const auto& [name, a] : j.at("revealed").items()) {
      p.revealed[name] = {a.at("value").get<std::string>(), json_array<16>(a.at("salt")),
                          crypto::merkle_proof_from_json(a.at("proof"))};
    }
    p.credential_root = json_array<32>(j.at("credentialRoot"));
    p.issuer_signature = json_array<64>(j.at("issuerSignature"));
    p.holder_binding_key = json_array<32>(j.at("holderBindingKey"));
    p.holder_binding_proof = crypto::merkle_proof_from_json(j.at("holderBindingProof"));
    p.rev_reg_id = j.at("revRegId").get<std::string>();
    p.revocation_ref_proof = crypto::merkle_proof_from_json(j.at("revocationRefProof"));
    if (!j.at("nonRevocationProof").is_null()) p.non_revocation = non_revocation_from_json(j["nonRevocationProof"]);
    p.timestamp = j.at("timestamp").get<std::int64_t>();
    p.holder_signature = json_array<64>(j.at("holderSignature"));
    return p;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("presentation: ") + e.what());
  }
}

Digest holder_challenge(const Digest& credential_root, const RequestNonce& nonce, std::int64_t timestamp) {
  Bytes buf;
  append(buf, credential_root);
  append(buf, nonce);
  append_u64(buf, static_cast<std::uint64_t>(timestamp));
  return crypto::tagged_hash(crypto::Domain::Presentation, buf);
}

Presentation present(const Credential& cred, const PresentationRequest& req, const crypto::KeyPair& holder,
                     const std::optional<RevocationSnapshot>& snapshot, std::int64_t timestamp_ms) {
  if (holder.public_key != cred.holder_binding_key) throw Error(ErrorCode::NotHolder, "key pair does not match holder binding");
  if (req.cred_def_id != cred.cred_def_id) throw Error(ErrorCode::NoMatchingCredential, "credential is for another cred def");
  if (req.requested_attrs.empty()) throw Error(ErrorCode::InvalidArgument, "no attributes requested");

  Presentation p;
  p.cred_def_id = cred.cred_def_id;
  p.credential_root = cred.credential_root;
  p.issuer_signature = cred.issuer_signature;
  p.holder_binding_key = cred.holder_binding_key;
  p.rev_reg_id = cred.rev_reg_id;

  if (cred.revocable()) {
    if (!snapshot) throw Error(ErrorCode::InvalidArgument, "revocable credential needs a registry snapshot");
    if (snapshot->def.id != cred.rev_reg_id) throw Error(ErrorCode::InvalidArgument, "snapshot is for another registry");
    p.non_revocation = refresh_witness(*snapshot, cred.rev_index);
  }

  const crypto::MerkleTree tree(credential_leaves(cred));
  std::size_t index = 0;
  std::map<std::string, std::size_t> position;
  for (const auto& [name, attr] : cred.attributes) position[name] = index++;
  for (const auto& name : req.requested_attrs) {
    auto it = cred.attributes.find(name);
    if (it == cred.attributes.end()) throw Error(ErrorCode::NoMatchingCredential, "credential has no attribute " + name);
    p.revealed[name] = {it->second.value, it->second.salt, tree.prove(position[name])};
  }
  p.holder_binding_proof = tree.prove(cred.attributes.size());
  p.revocation_ref_proof = tree.prove(cred.attributes.size() + 1);
  p.timestamp = timestamp_ms;
  p.holder_signature = crypto::sign(holder, holder_challenge(p.credential_root, req.nonce, timestamp_ms));
  return p;
}

std::string_view to_string(VerifyReason r) {
  switch (r) {
    case VerifyReason::Ok: return "OK";
    case VerifyReason::Malformed: return "MALFORMED";
    case VerifyReason::UnknownCredDef: return "UNKNOWN_CRED_DEF";
    case VerifyReason::CredDefMismatch: return "CRED_DEF_MISMATCH";
    case VerifyReason::IssuerSignatureInvalid: return "ISSUER_SIGNATURE_INVALID";
    case VerifyReason::CommitmentMismatch: return "COMMITMENT_MISMATCH";
    case VerifyReason::MissingAttribute: return "MISSING_ATTRIBUTE";
    case VerifyReason::HolderSignatureInvalid: return "HOLDER_SIGNATURE_INVALID";
    case VerifyReason::StaleTimestamp: return "STALE_TIMESTAMP";
    case VerifyReason::Revoked: return "REVOKED";
    case VerifyReason::StaleAccumulator: return "STALE_ACCUMULATOR";
    case VerifyReason::NonRevocationProofInvalid: return "NON_REVOCATION_PROOF_INVALID";
  }
  return "MALFORMED";
}

Json to_json(const VerificationResult& r) {
  return {{"verified", r.verified}, {"disclosed", r.disclosed}, {"reason", to_string(r.reason)}, {"detail", r.detail}};
}

namespace {

VerificationResult fail(VerifyReason reason, std::string detail) { return {false, {}, reason, std::move(detail)}; }

// A proof must sit at exactly the expected leaf of a tree of the expected size.
bool proof_at(const Digest& root, const Digest& leaf, const crypto::MerkleProof& proof, std::size_t index,
              std::size_t leaf_count) {
  const auto depth = static_cast<std::size_t>(std::countr_zero(crypto::merkle_width(leaf_count)));
  return proof.leaf_index == index && proof.path.size() == depth && crypto::merkle_verify(root, leaf, proof);
}

VerificationResult verify_impl(const Presentation& p, const PresentationRequest& req, const VerifierContext& ctx) {
  if (p.cred_def_id != req.cred_def_id) return fail(VerifyReason::CredDefMismatch, "presentation for " + p.cred_def_id);

  ledger::CredDefRecord cred_def;
  ledger::SchemaRecord schema;
  try {
    cred_def = ctx.ledger.get_cred_def(p.cred_def_id);
    schema = ctx.ledger.get_schema(cred_def.schema_id);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFound) return fail(VerifyReason::UnknownCredDef, e.what());
    throw;
  }

  for (const auto& name : req.requested_attrs) {
    if (!p.revealed.contains(name)) return fail(VerifyReason::MissingAttribute, name);
  }

  if (!crypto::verify(cred_def.issuer_public_key, p.credential_root, p.issuer_signature)) {
    return fail(VerifyReason::IssuerSignatureInvalid, "issuer signature over credential root");
  }

  const auto attrs = sorted_attrs(schema.attr_names);
  const std::size_t leaf_count = attrs.size() + 2;
  for (const auto& [name, a] : p.revealed) {
    auto it = std::lower_bound(attrs.begin(), attrs.end(), name);
    if (it == attrs.end() || *it != name) return fail(VerifyReason::Malformed, "attribute " + name + " not in schema");
    const auto leaf = crypto::commitment_digest(name, a.value, a.salt);
    if (!proof_at(p.credential_root, leaf, a.proof, static_cast<std::size_t>(it - attrs.begin()), leaf_count)) {
      return fail(VerifyReason::CommitmentMismatch, name);
    }
  }

  if (!proof_at(p.credential_root, holder_binding_leaf(p.holder_binding_key), p.holder_binding_proof, attrs.size(),
                leaf_count)) {
    return fail(VerifyReason::HolderSignatureInvalid, "holder key not bound into credential");
  }
  const std::uint32_t rev_index = p.non_revocation ? p.non_revocation->rev_index : 0;
  if (!proof_at(p.credential_root, revocation_ref_leaf(p.rev_reg_id, rev_index), p.revocation_ref_proof,
                attrs.size() + 1, leaf_count)) {
    return fail(VerifyReason::NonRevocationProofInvalid, "revocation reference not bound into credential");
  }
  if (!crypto::verify(p.holder_binding_key, holder_challenge(p.credential_root, req.nonce, p.timestamp),
                      p.holder_signature)) {
    return fail(VerifyReason::HolderSignatureInvalid, "holder signature over nonce");
  }
  const auto now = ctx.clock.now_ms();
  if (p.timestamp > now + ctx.replay_window_ms || p.timestamp < now - ctx.replay_window_ms) {
    return fail(VerifyReason::StaleTimestamp, "presentation timestamp outside replay window");
  }

  if (p.rev_reg_id.empty()) {
    if (p.non_revocation) return fail(VerifyReason::Malformed, "non-revocation proof for a non-revocable credential");
  } else {
    if (!p.non_revocation) return fail(VerifyReason::NonRevocationProofInvalid, "missing non-revocation proof");
    const auto& nr = *p.non_revocation;
    ledger::RevRegDefRecord def;
    ledger::RevRegState state;
    try {
      def = ctx.ledger.get_rev_reg_def(p.rev_reg_id);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return fail(VerifyReason::NonRevocationProofInvalid, "unknown registry");
      throw;
    }
    if (def.cred_def_id != cred_def.id) return fail(VerifyReason::CredDefMismatch, "registry belongs to another cred def");
    try {
      state = ctx.ledger.get_rev_reg(p.rev_reg_id, req.non_revoked_at_time);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return fail(VerifyReason::StaleAccumulator, "registry not published at that time");
      throw;
    }
    if (state.revoked.contains(rev_index)) return fail(VerifyReason::Revoked, "index " + std::to_string(rev_index));
    if (nr.accumulator_seq_no != state.seq_no || nr.accumulator != state.accumulator) {
      return fail(VerifyReason::StaleAccumulator, "proof against seqNo " + std::to_string(nr.accumulator_seq_no) +
                                                      ", ledger at " + std::to_string(state.seq_no));
    }
    if (rev_index >= def.max_cred_num ||
        !proof_at(state.accumulator, revocation_leaf(def.salt, rev_index, false), nr.proof, rev_index, def.max_cred_num)) {
      return fail(VerifyReason::NonRevocationProofInvalid, "membership proof");
    }
  }

  VerificationResult ok{true, {}, VerifyReason::Ok, {}};
  for (const auto& [name, a] : p.revealed) ok.disclosed[name] = a.value;
  return ok;
}

}  // namespace

VerificationResult verify(const Presentation& p, const PresentationRequest& req, const VerifierContext& ctx) {
  try {
    return verify_impl(p, req, ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TransportError) throw;
    return fail(VerifyReason::Malformed, e.what());
  } catch (const std::exception& e) {
    return fail(VerifyReason::Malformed, e.what());
  }
}

VerificationResult verify_json(const Json& presentation, const PresentationRequest& req, const VerifierContext& ctx) {
  Presentation p;
  try {
    p = presentation_from_json(presentation);
  } catch (const std::exception& e) {
    return fail(VerifyReason::Malformed, e.what());
  }
  return verify(p, req, ctx);
}

}  // namespace ssi::anoncreds
