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
// One PASS/FAIL line per acceptance criterion. Arguments, if any, pick the
// criteria to run by number.
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "acceptance/acceptance.hpp"

using namespace ssi::acceptance;

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::off);
  struct Criterion {
    int number;
    const char* title;
    std::function<Verdict()> run;
  };
  const Criterion all[] = {
      {1, "end-to-end demo with minimal disclosure", criterion_demo},
      {2, "ledger fault tolerance and write permissions", criterion_fault_tolerance},
      {3, "audit log replay and tamper localization", criterion_replay},
      {4, "revocation accumulator and witnesses", criterion_accumulator},
      {5, "attack cases are rejected", criterion_security},
      {6, "benchmark harness shape and CSV", criterion_bench},
      {7, "process suite scaling", criterion_process_suite},
      {8, "wallet encryption at rest", criterion_wallet},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  int ran = 0, passed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.contains(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("uncaught: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ++ran;
    if (v.pass) ++passed;
    std::printf("%s [%d] %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", c.number, c.title, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", passed, ran);
  return passed == ran ? 0 : 1;
}
