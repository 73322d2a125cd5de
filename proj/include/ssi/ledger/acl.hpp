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

#include "ssi/common/json_util.hpp"
#include "ssi/ledger/types.hpp"

namespace ssi::ledger {

/// Write permissions:
///   NYM granting a role      TRUSTEE, STEWARD
///   NYM without a role       ENDORSER and above
///   SCHEMA, CRED_DEF, REV_*  ENDORSER and above
///   NODE, CONFIG             STEWARD and above
bool acl_permits(Role author, TxnKind kind, const Json& payload);

}  // namespace ssi::ledger
