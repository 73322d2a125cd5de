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
#include "ssi/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ssi/common/error.hpp"

namespace ssi::bench {

namespace {

constexpr std::string_view kScenarioNames[] = {"CONNECTION_INVITATION", "REGISTER_SCHEMA", "ISSUE_CREDENTIAL",
                                               "SEND_PROOF_REQUEST", "PRESENT_PROOF"};

std::string normalized(std::string_view name) {
  std::string out(name);
  for (auto& c : out) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string kebab(std::string_view name) {
  std::string out(name);
  for (auto& c : out) c = c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(Scenario s) { return kScenarioNames[static_cast<int>(s)]; }
std::string_view to_string(Mode m) { return m == Mode::Sequential ? "SEQUENTIAL" : "CONCURRENT"; }

Scenario scenario_from_string(std::string_view name) {
  const auto n = normalized(name);
  for (std::size_t i = 0; i < std::size(kScenarioNames); ++i) {
    if (kScenarioNames[i] == n) return static_cast<Scenario>(i);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scenario '" + std::string(name) + "'; valid: " + scenario_names());
}

Mode mode_from_string(std::string_view name) {
  const auto n = normalized(name);
  if (n == "SEQUENTIAL") return Mode::Sequential;
  if (n == "CONCURRENT") return Mode::Concurrent;
  throw Error(ErrorCode::InvalidArgument, "mode must be sequential or concurrent, not '" + std::string(name) + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = {Scenario::ConnectionInvitation, Scenario::RegisterSchema,
                                            Scenario::IssueCredential, Scenario::SendProofRequest,
                                            Scenario::PresentProof};
  return all;
}

std::string scenario_names() {
  std::string out;
  for (auto s : all_scenarios()) out += (out.empty() ? "" : ", ") + kebab(to_string(s));
  return out;
}

void validate(const LoadProfile& p) {
  if (p.n_requests < 1) throw Error(ErrorCode::InvalidArgument, "nRequests must be at least 1");
  if (p.rampup_s < 0) throw Error(ErrorCode::InvalidArgument, "rampup must not be negative");
}

MetricsReport summarize(const LoadProfile& p, const std::vector<Sample>& samples, double wall_ms) {
  MetricsReport r;
  r.scenario = p.scenario;
  r.n_requests = p.n_requests;
  r.mode = p.mode;
  r.rampup_s = p.rampup_s;
  if (samples.empty()) return r;
  double sum = 0;
  r.min_ms = samples.front().latency_ms;
  r.max_ms = samples.front().latency_ms;
  for (const auto& s : samples) {
    r.min_ms = std::min(r.min_ms, s.latency_ms);
    r.max_ms = std::max(r.max_ms, s.latency_ms);
    sum += s.latency_ms;
    if (!s.ok) ++r.errors;
  }
  const auto n = static_cast<double>(samples.size());
  r.avg_ms = sum / n;
  double sq = 0;
  for (const auto& s : samples) sq += (s.latency_ms - r.avg_ms) * (s.latency_ms - r.avg_ms);
  r.stddev = std::sqrt(sq / n);
  // one sample: every deviation is exactly zero, but guard against rounding
  if (samples.size() == 1) r.stddev = 0;
  r.throughput_rps = wall_ms > 0 ? n * 1000.0 / wall_ms : 0;
  return r;
}

void SampleSink::add(Sample s) {
  std::lock_guard lock(mu_);
  samples_.push_back(std::move(s));
}

std::vector<Sample> SampleSink::take() {
  std::lock_guard lock(mu_);
  auto out = std::move(samples_);
  samples_.clear();
  std::sort(out.begin(), out.end(), [](const Sample& a, const Sample& b) { return a.index < b.index; });
  return out;
}

std::string csv_row(const MetricsReport& r) {
  return fmt::format("{},{},{},{},{:.3f},{:.3f},{:.3f},{:.3f},{:.3f},{}", to_string(r.scenario), r.n_requests,
                     to_string(r.mode), r.rampup_s, r.min_ms, r.max_ms, r.avg_ms, r.stddev, r.throughput_rps, r.errors);
}

MetricsReport parse_csv_row(std::string_view line) {
  const auto f = split(line, ',');
  if (f.size() != 10) throw Error(ErrorCode::Malformed, "expected 10 CSV fields, got " + std::to_string(f.size()));
  try {
    MetricsReport r;
    r.scenario = scenario_from_string(f[0]);
    r.n_requests = std::stoul(f[1]);
    r.mode = mode_from_string(f[2]);
    r.rampup_s = std::stoi(f[3]);
    r.min_ms = std::stod(f[4]);
    r.max_ms = std::stod(f[5]);
    r.avg_ms = std::stod(f[6]);
    r.stddev = std::stod(f[7]);
    r.throughput_rps = std::stod(f[8]);
    r.errors = std::stoul(f[9]);
    return r;
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::Malformed, "bad CSV row '" + std::string(line) + "': " + e.what());
  }
}

std::filesystem::path samples_path(const std::filesystem::path& csv) {
  return csv.string() + ".samples.jsonl";
}

void export_csv(const MetricsReport& r, const std::vector<Sample>& samples, const std::filesystem::path& path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  const std::size_t row = fresh ? 1 : read_csv(path).size() + 1;
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  if (fresh) out << kCsvHeader << '\n';
  out << csv_row(r) << '\n';
  if (!out.flush()) throw Error(ErrorCode::IoError, "write failed: " + path.string());

  std::ofstream raw(samples_path(path), std::ios::app);
  if (!raw) throw Error(ErrorCode::IoError, "cannot write " + samples_path(path).string());
  for (const auto& s : samples) {
    Json j = {{"row", row},          {"scenario", to_string(r.scenario)}, {"mode", to_string(r.mode)},
              {"index", s.index},    {"startMs", s.start_ms},            {"latencyMs", s.latency_ms},
              {"ok", s.ok}};
    if (!s.ok) j["error"] = s.error;
    raw << j.dump() << '\n';
  }
  if (!raw.flush()) throw Error(ErrorCode::IoError, "write failed: " + samples_path(path).string());
}

std::vector<MetricsReport> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::Malformed, path.string() + ": header does not match");
  }
  std::vector<MetricsReport> out;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_csv_row(line));
  }
  return out;
}

std::vector<TaggedSample> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::vector<TaggedSample> out;
  std::string line;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = Json::parse(line);
      TaggedSample t;
      t.row = j.at("row").get<std::size_t>();
      t.sample.index = j.at("index").get<std::size_t>();
      t.sample.start_ms = j.at("startMs").get<double>();
      t.sample.latency_ms = j.at("latencyMs").get<double>();
      t.sample.ok = j.at("ok").get<bool>();
      t.sample.error = j.value("error", std::string());
      out.push_back(std::move(t));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Malformed, path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace ssi::bench
