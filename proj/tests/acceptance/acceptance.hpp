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
#include <string>
#include <vector>

#include "ssi/cli/config.hpp"
#include "ssi/common/error.hpp"

namespace ssi::acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Counts expectations and keeps the first few that failed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (ok) return;
    ++failures_;
    if (first_.size() < 5) first_.push_back(what);
  }

  template <typename F>
  void expect_error(ErrorCode want, F&& f, const std::string& what) {
    try {
      f();
      expect(false, what + ": no error");
    } catch (const Error& e) {
      expect(e.code() == want, what + ": got " + std::string(to_string(e.code())));
    }
  }

  bool ok() const { return failures_ == 0; }
  std::size_t count() const { return count_; }

  Verdict verdict(const std::string& summary) const {
    if (ok()) return {true, summary + " [" + std::to_string(count_) + " checks]"};
    std::string d = std::to_string(failures_) + "/" + std::to_string(count_) + " checks failed:";
    for (const auto& f : first_) d += " {" + f + "}";
    return {false, d + " | " + summary};
  }

 private:
  std::size_t count_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> first_;
};

// Bundled scenario with every port ephemeral.
cli::ScenarioConfig demo_config();

Verdict criterion_demo();
Verdict criterion_fault_tolerance();
Verdict criterion_replay();
Verdict criterion_accumulator();
Verdict criterion_security();
Verdict criterion_bench();
Verdict criterion_process_suite();
Verdict criterion_wallet();

}  // namespace ssi::acceptance
