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

#include <string>
#include <vector>

#include "ssi/bench/metrics.hpp"

namespace ssi::bench {

/// Admin API base URLs. The holder must auto-accept.
struct Targets {
  std::string issuer;
  std::string holder;
  std::string verifier;
};

/// Untimed setup a scenario needs: connections, a cred def, a stored credential.
struct Prepared {
  std::string issuer_conn;    // issuer's side of issuer <-> holder
  std::string verifier_conn;  // verifier's side of verifier <-> holder
  std::string cred_def_id;
  std::vector<std::string> requested_attrs;
  std::string run_tag;  // keeps schema names unique across runs
};

Prepared prepare(const Targets& t, Scenario s);

/// One request of the scenario; throws on failure.
void perform(const Targets& t, const Prepared& p, Scenario s, std::size_t index);

struct RunResult {
  MetricsReport report;
  std::vector<Sample> samples;
};

/// Attempts exactly n requests. Sequential mode runs one worker; concurrent
/// mode starts worker k of n at k * rampup / n. Throws TargetDown before any
/// request if a target does not answer.
RunResult run(const LoadProfile& profile, const Targets& targets);

}  // namespace ssi::bench
