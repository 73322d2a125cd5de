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

#include <functional>
#include <string>
#include <vector>

#include "ssi/bench/environment.hpp"
#include "ssi/cli/config.hpp"

namespace ssi::cli {

/// A demo failure, tagged with the transcript step that was running.
class StepError : public Error {
 public:
  StepError(std::string step, const Error& cause)
      : Error(cause.code(), "step " + step + ": " + detail(cause)), step_(std::move(step)) {}
  const std::string& step() const noexcept { return step_; }

 private:
  static std::string detail(const Error& e) {
    const std::string what = e.what();
    const auto prefix = std::string(to_string(e.code())) + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
  }

  std::string step_;
};

struct DemoOptions {
  bool skip_revoke = false;
  /// Ledger served by another process; empty bootstraps one in-process.
  std::string attach_url;
  /// Called with each transcript line as soon as its step completes.
  std::function<void(const Json&)> on_event;
  std::function<void(bench::Environment&)> after_bootstrap;
  std::function<void(bench::Environment&)> before_stop;
};

/// The Government -> Patient -> Hospital workflow. Returns the transcript;
/// throws StepError.
std::vector<Json> run_demo(const ScenarioConfig& config, const DemoOptions& options = {});

/// Drops identifier fields so transcripts of separate runs compare equal.
Json strip_ids(const Json& line);

}  // namespace ssi::cli
