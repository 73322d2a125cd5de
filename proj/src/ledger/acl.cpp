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
#include "ssi/ledger/acl.hpp"

namespace ssi::ledger {

bool acl_permits(Role author, TxnKind kind, const Json& payload) {
  switch (kind) {
    case TxnKind::Nym: {
      const bool grants_role = payload.is_object() && payload.contains("role") && payload["role"].is_string() &&
                               payload["role"].get_ref<const std::string&>() != "NONE";
      return grants_role ? author >= Role::Steward : author >= Role::Endorser;
    }
    case TxnKind::Schema:
    case TxnKind::CredDef:
    case TxnKind::RevRegDef:
    case TxnKind::RevRegEntry:
      return author >= Role::Endorser;
    case TxnKind::Node:
    case TxnKind::Config:
      return author >= Role::Steward;
  }
  return false;
}

}  // namespace ssi::ledger
