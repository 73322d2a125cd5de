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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ssi/common/error.hpp"

namespace ssi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // bad arguments, config, genesis, busy port
inline constexpr int kExitProtocol = 3;  // a workflow or network step failed

int exit_code_for(ErrorCode code);

struct CommonOptions {
  std::filesystem::path config;
  std::string attach;  // ledger URL served by another process
};

struct BenchOptions {
  std::string scenario;
  std::size_t n = 10;
  int rampup_s = 1;
  std::string mode = "sequential";
  std::filesystem::path out = "bench.csv";
  bool auto_bootstrap = false;
  /// "issuer=URL,holder=URL,verifier=URL"; empty uses the config's ports.
  std::string targets;
  /// Runs the process-time suite with this many exchanges instead.
  std::optional<std::size_t> process;
};

/// Pool, ledger HTTP server and steward agent. Serves until SIGINT/SIGTERM
/// unless \p once.
int cmd_bootstrap(const CommonOptions& o, bool once, std::ostream& out, std::ostream& err);
int cmd_demo(const CommonOptions& o, bool skip_revoke, std::ostream& out, std::ostream& err);
int cmd_bench(const CommonOptions& o, const BenchOptions& b, std::ostream& out, std::ostream& err);
/// One configured agent attached to a running ledger.
int cmd_serve(const CommonOptions& o, const std::string& label, bool auto_accept, std::ostream& out, std::ostream& err);
/// Audit log as JSON lines, from --attach or from a fresh demo run.
int cmd_export_log(const CommonOptions& o, const std::filesystem::path& path, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace ssi::cli
