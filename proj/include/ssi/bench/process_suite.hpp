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

#include <cstddef>
#include <optional>

#include "ssi/bench/environment.hpp"

namespace ssi::bench {

struct PhaseDurations {
  double startup_s = 0;
  double connection_s = 0;
  double register_schema_s = 0;
  double exchange_credential_s = 0;
};

Json to_json(const PhaseDurations& d);

/// Fresh environment, one connection, one schema and cred def, then
/// \p n_exchanges sequential credential exchanges over the admin API. A
/// failure is rethrown with the phase name prefixed.
PhaseDurations run_process_suite(std::size_t n_exchanges, const EnvironmentSpec& spec = default_spec());

}  // namespace ssi::bench
