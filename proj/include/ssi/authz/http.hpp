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

#include <httplib.h>

#include "ssi/agent/agent.hpp"
#include "ssi/authz/provider.hpp"

namespace ssi::authz {

/// POST /authorize, POST /introspect and GET /resources/{id} on the
/// verifier's admin listener. Call before the agent starts.
void mount(agent::Agent& verifier, Provider& provider);

}  // namespace ssi::authz
