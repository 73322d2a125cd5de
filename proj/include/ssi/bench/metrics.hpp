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
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ssi/common/json_util.hpp"

namespace ssi::bench {

enum class Scenario { ConnectionInvitation, RegisterSchema, IssueCredential, SendProofRequest, PresentProof };
enum class Mode { Sequential, Concurrent };

std::string_view to_string(Scenario s);
std::string_view to_string(Mode m);
/// Accepts CONNECTION_INVITATION or connection-invitation. Throws InvalidArgument.
Scenario scenario_from_string(std::string_view name);
Mode mode_from_string(std::string_view name);
const std::vector<Scenario>& all_scenarios();
/// "connection-invitation, register-schema, ..." for usage messages.
std::string scenario_names();

struct LoadProfile {
  Scenario scenario = Scenario::ConnectionInvitation;
  std::size_t n_requests = 1;
  int rampup_s = 1;
  Mode mode = Mode::Sequential;
};

/// Throws InvalidArgument for n < 1 or a negative ramp-up.
void validate(const LoadProfile& p);

struct Sample {
  std::size_t index = 0;
  double start_ms = 0;  // offset from the start of the run
  double latency_ms = 0;
  bool ok = true;
  std::string error;
};

struct MetricsReport {
  Scenario scenario = Scenario::ConnectionInvitation;
  std::size_t n_requests = 0;
  Mode mode = Mode::Sequential;
  int rampup_s = 0;
  double min_ms = 0;
  double max_ms = 0;
  double avg_ms = 0;
  double stddev = 0;  // population
  double throughput_rps = 0;
  std::size_t errors = 0;
};

/// Latency columns cover every attempted request, failed ones included;
/// throughput is requests over the wall time of the whole run.
MetricsReport summarize(const LoadProfile& p, const std::vector<Sample>& samples, double wall_ms);

/// Collects samples from any number of workers.
class SampleSink {
 public:
  void add(Sample s);
  std::vector<Sample> take();

 private:
  std::mutex mu_;
  std::vector<Sample> samples_;
};

inline constexpr std::string_view kCsvHeader =
    "scenario,n_requests,mode,rampup_s,min_ms,max_ms,avg_ms,stddev,throughput_rps,errors";

std::string csv_row(const MetricsReport& r);
MetricsReport parse_csv_row(std::string_view line);

/// Appends one row, writing the header first if the file is new or empty.
/// Raw samples go to <path>.samples.jsonl tagged with the row number.
/// Throws IoError.
void export_csv(const MetricsReport& r, const std::vector<Sample>& samples, const std::filesystem::path& path);
std::vector<MetricsReport> read_csv(const std::filesystem::path& path);
std::filesystem::path samples_path(const std::filesystem::path& csv);

struct TaggedSample {
  std::size_t row = 0;
  Sample sample;
};
std::vector<TaggedSample> read_samples(const std::filesystem::path& path);

}  // namespace ssi::bench
