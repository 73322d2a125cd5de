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
#include <string>
#include <vector>

#include "ssi/anoncreds/credential.hpp"
#include "ssi/anoncreds/revocation.hpp"
#include "ssi/common/clock.hpp"
#include "ssi/ledger/client.hpp"

namespace ssi::anoncreds {

using RequestNonce = ByteArray<24>;

struct PresentationRequest {
  RequestNonce nonce{};
  std::string cred_def_id;
  std::vector<std::string> requested_attrs;
  std::optional<std::int64_t> non_revoked_at_time;
};

/// Fresh random nonce.
PresentationRequest new_presentation_request(std::string cred_def_id, std::vector<std::string> requested_attrs,
                                             std::optional<std::int64_t> non_revoked_at_time = std::nullopt);

/// Throws InvalidArgument if requested attributes are empty, repeated or not in \p schema_attrs.
void check_request(const PresentationRequest& req, const std::vector<std::string>& schema_attrs);

Json to_json(const PresentationRequest& req);
PresentationRequest presentation_request_from_json(const Json& j);

struct RevealedAttribute {
  std::string value;
  crypto::Salt salt{};
  crypto::MerkleProof proof;
};

struct Presentation {
  std::string cred_def_id;
  std::map<std::string, RevealedAttribute> revealed;
  Digest credential_root{};
  crypto::Signature issuer_signature{};
  crypto::PublicKey holder_binding_key{};
  crypto::MerkleProof holder_binding_proof;
  std::string rev_reg_id;
  crypto::MerkleProof revocation_ref_proof;
  std::optional<NonRevocationProof> non_revocation;
  std::int64_t timestamp = 0;
  crypto::Signature holder_signature{};
};

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

/// H(0x07 || credentialRoot || nonce || u64 timestamp)
Digest holder_challenge(const Digest& credential_root, const RequestNonce& nonce, std::int64_t timestamp);

/// Throws NotHolder if \p holder does not match the binding key,
/// NoMatchingCredential for attributes the credential lacks, CredentialRevoked
/// if the snapshot lists the credential's index, InvalidArgument if a revocable
/// credential comes without a snapshot.
Presentation present(const Credential& cred, const PresentationRequest& req, const crypto::KeyPair& holder,
                     const std::optional<RevocationSnapshot>& snapshot, std::int64_t timestamp_ms);

enum class VerifyReason {
  Ok,
  Malformed,
  UnknownCredDef,
  CredDefMismatch,
  IssuerSignatureInvalid,
  CommitmentMismatch,
  MissingAttribute,
  HolderSignatureInvalid,
  StaleTimestamp,
  Revoked,
  StaleAccumulator,
  NonRevocationProofInvalid,
};

std::string_view to_string(VerifyReason reason);

struct VerificationResult {
  bool verified = false;
  std::map<std::string, std::string> disclosed;
  VerifyReason reason = VerifyReason::Malformed;
  std::string detail;
};

Json to_json(const VerificationResult& r);

struct VerifierContext {
  ledger::LedgerClient& ledger;
  const Clock& clock;
  std::int64_t replay_window_ms;
};

/// Never throws on bad input; only a ledger transport failure propagates.
VerificationResult verify(const Presentation& p, const PresentationRequest& req, const VerifierContext& ctx);
VerificationResult verify_json(const Json& presentation, const PresentationRequest& req, const VerifierContext& ctx);

}  // namespace ssi::anoncreds
