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
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "ssi/bench/metrics.hpp"
#include "ssi/cli/commands.hpp"
#include "ssi/cli/config.hpp"
#include "ssi/cli/scenario.hpp"
#include "ssi/common/encoding.hpp"
#include "ssi/ledger/replay.hpp"
#include "support/ledger_fixture.hpp"
#include "support/process.hpp"

using namespace ssi;
using namespace ssi::cli;
using namespace ssi::testing;

namespace {

const std::filesystem::path kFixtures = SSI_FIXTURES_DIR;

Json fixture_config() {
  std::ifstream in(kFixtures / "config.json");
  return Json::parse(in);
}

/// Writes a config next to copies of the fixtures so relative paths still work.
std::filesystem::path write_config(const std::string& name, const Json& j) {
  const auto dir = scratch_dir(name);
  std::filesystem::copy(kFixtures, dir, std::filesystem::copy_options::recursive);
  const auto p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

ScenarioConfig ephemeral_config() {
  auto c = parse_config(fixture_config(), kFixtures);
  c.ledger_port = 0;
  for (auto& a : c.agents) a.port = 0;
  validate(c);
  return c;
}

std::vector<std::string> steps(const std::vector<Json>& transcript) {
  std::vector<std::string> out;
  for (const auto& l : transcript) out.push_back(l.at("step").get<std::string>());
  return out;
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> out;
  for (const auto& l : lines_of(text)) out.push_back(Json::parse(l));
  return out;
}

struct EnvGuard {
  std::string name;
  EnvGuard(const std::string& n, const std::string& v) : name(n) { ::setenv(n.c_str(), v.c_str(), 1); }
  ~EnvGuard() { ::unsetenv(name.c_str()); }
};

const std::vector<std::string> kSteps{"bootstrap", "enroll", "register-schema", "register-cred-def",
                                      "connect", "issue", "connect", "proof", "authorize", "access",
                                      "second-proof", "revoke", "post-revocation-access",
                                      "post-revocation-verify"};

}  // namespace

TEST_CASE("the bundled config loads") {
  const auto c = load_config(kFixtures / "config.json");
  CHECK(c.agents.size() == 5);
  CHECK(c.by_role("steward").label == "Steward");
  CHECK(c.genesis_path == kFixtures / "genesis.jsonl");
  CHECK(c.steward_seed == crypto::seed_from_label("Steward1"));
  CHECK(c.schema("PID").attr_names.size() == 5);
  CHECK(c.schema("PID").sample.at("designation") == "physician");
  CHECK(c.schema("NID").attr_names.size() == 5);
  CHECK(std::filesystem::exists(c.authz_rules_path));
  CHECK(error_code_of([&] { c.agent("Nobody"); }) == ErrorCode::NotFound);

  const auto spec = environment_spec(c);
  CHECK(spec.genesis.nodes.size() == 4);
  CHECK(spec.agents.size() == 5);
  CHECK(spec.agents.at(1).inbound_port == spec.agents.at(1).admin_port + 1);
}

TEST_CASE("config validation") {
  auto j = fixture_config();

  SUBCASE("a hex steward seed is used as is") {
    const std::string hex(64, 'a');
    j["stewardSeed"] = hex;
    CHECK(parse_config(j, kFixtures).steward_seed == encoding::to_array<32>(encoding::from_hex(hex)));
  }
  SUBCASE("no steward") {
    j["agents"].erase(0);
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("two stewards") {
    j["agents"][1]["role"] = "steward";
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("unknown role") {
    j["agents"][1]["role"] = "auditor";
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("duplicate admin port") {
    j["agents"][2]["port"] = j["agents"][1]["port"];
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("admin port on another agent's inbound port") {
    j["agents"][2]["port"] = j["agents"][1]["port"].get<int>() + 1;
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("ledger port on an agent port") {
    j["ledgerPort"] = j["agents"][0]["port"];
    CHECK(error_code_of([&] { validate(parse_config(j, kFixtures)); }) == ErrorCode::Malformed);
  }
  SUBCASE("missing agents") {
    j.erase("agents");
    CHECK(error_code_of([&] { parse_config(j, kFixtures); }) == ErrorCode::Malformed);
  }
  SUBCASE("missing schema file") {
    j["schemas"].push_back("schemas/nope.json");
    CHECK(error_code_of([&] { parse_config(j, kFixtures); }) == ErrorCode::IoError);
  }
  SUBCASE("unreadable and broken files") {
    CHECK(error_code_of([&] { load_config(kFixtures / "nope.json"); }) == ErrorCode::IoError);
    const auto dir = scratch_dir("broken");
    std::ofstream(dir / "c.json") << "{\"agents\": [";
    CHECK(error_code_of([&] { load_config(dir / "c.json"); }) == ErrorCode::Malformed);
  }
}

TEST_CASE("environment overrides") {
  SUBCASE("port offset") {
    EnvGuard g("SSI_PORT_OFFSET", "1000");
    const auto c = load_config(kFixtures / "config.json");
    CHECK(c.ledger_port == 10700);
    CHECK(c.agent("Hospital").port == 9050);
  }
  SUBCASE("ephemeral ports") {
    EnvGuard g("SSI_EPHEMERAL_PORTS", "1");
    const auto c = load_config(kFixtures / "config.json");
    CHECK(c.ledger_port == 0);
    for (const auto& a : c.agents) CHECK(a.port == 0);
  }
  SUBCASE("bad offset") {
    EnvGuard g("SSI_PORT_OFFSET", "lots");
    CHECK(error_code_of([] { load_config(kFixtures / "config.json"); }) == ErrorCode::Malformed);
  }
  SUBCASE("config path") {
    EnvGuard g("SSI_CONFIG", "/somewhere/else.json");
    CHECK(default_config_path() == "/somewhere/else.json");
  }
  CHECK(default_config_path() == kFixtures / "config.json");
}

TEST_CASE("demo transcript") {
  const auto c = ephemeral_config();
  std::vector<Json> streamed;
  DemoOptions o;
  o.on_event = [&](const Json& l) { streamed.push_back(l); };
  const auto t = run_demo(c, o);
  CHECK(streamed == t);
  CHECK(steps(t) == kSteps);

  const auto& boot = t.at(0);
  CHECK(boot.at("nodes") == 4);
  CHECK(boot.at("quorum") == 3);
  CHECK(t.at(1).at("endorsers").size() == 3);
  for (const auto& e : t.at(1).at("endorsers")) CHECK(e.at("role") == "ENDORSER");
  CHECK(t.at(5).at("holderState") == "STORED");
  CHECK(t.at(5).at("issuerState") == "ACKED");

  const auto& proof = t.at(7);
  CHECK(proof.at("revealed") == Json({"fullName", "licenseNumber"}));
  CHECK(proof.at("hidden") == 3);
  CHECK(proof.at("verified") == true);
  CHECK(t.at(8).at("roles") == Json({"clinician"}));
  CHECK(t.at(8).at("disclosed").size() == 2);
  CHECK(t.at(9).at("allowed") == true);
  CHECK(t.at(12).at("allowed") == false);
  CHECK(t.at(12).at("error") == "NotVerified");
  CHECK(t.back() == Json{{"step", "post-revocation-verify"}, {"state", "VERIFIED_FALSE"}, {"verified", false},
                         {"reason", "REVOKED"}});

  SUBCASE("two clean runs agree up to identifiers") {
    const auto again = run_demo(c);
    REQUIRE(again.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(strip_ids(again[i]) == strip_ids(t[i]));
  }
  SUBCASE("skip revoke") {
    DemoOptions skip;
    skip.skip_revoke = true;
    const auto s = run_demo(c, skip);
    auto want = kSteps;
    std::erase(want, "revoke");
    CHECK(steps(s) == want);
    CHECK(s.at(s.size() - 2).at("allowed") == true);
    CHECK(s.back().at("verified") == true);
    CHECK(s.back().at("state") == "VERIFIED_TRUE");
  }
}

TEST_CASE("strip_ids keeps everything else") {
  const Json line{{"step", "x"}, {"schemaId", "a"}, {"stewardDid", "b"}, {"did", "c"},
                  {"nested", {{{"credDefId", "d"}, {"label", "L"}}}}, {"Id", 1}};
  CHECK(strip_ids(line) == Json{{"step", "x"}, {"nested", {{{"label", "L"}}}}, {"Id", 1}});
}

TEST_CASE("demo failures name the step") {
  auto c = ephemeral_config();

  SUBCASE("ledger down") {
    DemoOptions o;
    o.attach_url = "http://127.0.0.1:1";
    try {
      run_demo(c, o);
      FAIL("demo succeeded against a dead ledger");
    } catch (const StepError& e) {
      CHECK(e.step() == "enroll");
      CHECK(e.code() == ErrorCode::TransportError);
    }
  }
  SUBCASE("quorum lost after bootstrap") {
    DemoOptions o;
    o.after_bootstrap = [](bench::Environment& env) {
      env.pool()->stop_node(2);
      env.pool()->stop_node(3);
    };
    try {
      run_demo(c, o);
      FAIL("demo succeeded without a quorum");
    } catch (const StepError& e) {
      CHECK(e.step() == "enroll");
      CHECK(e.code() == ErrorCode::NoConsensus);
    }
  }
  SUBCASE("missing genesis") {
    c.genesis_path = kFixtures / "nope.jsonl";
    try {
      run_demo(c);
      FAIL("demo ran without a genesis file");
    } catch (const StepError& e) {
      CHECK(e.step() == "bootstrap");
      CHECK(exit_code_for(e.code()) == kExitUsage);
    }
  }
}

TEST_CASE("exit codes") {
  for (auto code : {ErrorCode::Malformed, ErrorCode::IoError, ErrorCode::InvalidGenesis, ErrorCode::InsufficientNodes,
                    ErrorCode::InvalidArgument}) {
    CHECK(exit_code_for(code) == kExitUsage);
  }
  for (auto code : {ErrorCode::NoConsensus, ErrorCode::TransportError, ErrorCode::NotVerified, ErrorCode::Timeout}) {
    CHECK(exit_code_for(code) == kExitProtocol);
  }
}

TEST_CASE("ssi-desk demo") {
  const std::map<std::string, std::string> env{{"SSI_PORT_OFFSET", std::to_string(port_offset(1))}};

  SUBCASE("clean run") {
    const auto r = run_tool({"demo"}, env);
    CHECK(r.rc == 0);
    const auto t = json_lines(r.out);
    REQUIRE(!t.empty());
    CHECK(steps(t) == kSteps);
    CHECK(t.back().at("step") == "post-revocation-verify");
    CHECK(t.back().at("verified") == false);
  }
  SUBCASE("skip revoke") {
    const auto r = run_tool({"demo", "--skip-revoke"}, env);
    CHECK(r.rc == 0);
    const auto t = json_lines(r.out);
    REQUIRE(!t.empty());
    CHECK(t.back().at("verified") == true);
  }
  SUBCASE("ledger down") {
    const auto r = run_tool({"--attach", "http://127.0.0.1:1", "demo"}, env);
    CHECK(r.rc == 3);
    const auto t = json_lines(r.out);
    REQUIRE(!t.empty());
    CHECK(t.back().at("step") == "enroll");
    CHECK(r.err.find("step enroll") != std::string::npos);
  }
  SUBCASE("broken config") {
    const auto dir = scratch_dir("badcfg");
    std::ofstream(dir / "c.json") << "[]";
    CHECK(run_tool({"--config", (dir / "c.json").string(), "demo"}).rc == 2);
  }
  SUBCASE("unknown subcommand") { CHECK(run_tool({"frobnicate"}).rc == 2); }
}

TEST_CASE("ssi-desk bootstrap") {
  const auto offset = port_offset(2);
  const std::map<std::string, std::string> env{{"SSI_PORT_OFFSET", std::to_string(offset)}};

  SUBCASE("once") {
    const auto r = run_tool({"bootstrap", "--once"}, env);
    INFO(r.err);
    REQUIRE(r.rc == 0);
    const auto ready = Json::parse(lines_of(r.out).at(0));
    CHECK(ready.at("nodes") == 4);
    CHECK(ready.at("stewardRole") == "STEWARD");
    CHECK(ready.at("stewardDid") == crypto::did_from_key(crypto::generate_keypair(crypto::seed_from_label("Steward1")).public_key));
  }
  SUBCASE("missing genesis") {
    auto j = fixture_config();
    j["genesisPath"] = "missing.jsonl";
    const auto p = write_config("nogenesis", j);
    std::filesystem::remove(p.parent_path() / "missing.jsonl");
    const auto r = run_tool({"--config", p.string(), "bootstrap", "--once"}, env);
    CHECK(r.rc == 2);
    CHECK(r.err.find("genesis") != std::string::npos);
  }
  SUBCASE("three-node genesis") {
    auto j = fixture_config();
    const auto p = write_config("threenodes", j);
    auto lines = lines_of(slurp(p.parent_path() / "genesis.jsonl"));
    lines.pop_back();
    std::ofstream out(p.parent_path() / "genesis.jsonl", std::ios::trunc);
    for (const auto& l : lines) out << l << "\n";
    out.close();
    CHECK(run_tool({"--config", p.string(), "bootstrap", "--once"}, env).rc == 2);
  }
  SUBCASE("second bootstrap on the same ports") {
    Tool first({"bootstrap"}, env);
    REQUIRE(first.wait_for_output([](const std::string& s) { return s.find("\"ready\"") != std::string::npos; }));
    const auto second = run_tool({"bootstrap", "--once"}, env);
    CHECK(second.rc == 2);
    CHECK(first.stop() == 0);
  }
}

TEST_CASE("ssi-desk with separately served components") {
  const auto offset = port_offset(3);
  const std::map<std::string, std::string> env{{"SSI_PORT_OFFSET", std::to_string(offset)}};
  const auto ledger_url = "http://127.0.0.1:" + std::to_string(9700 + offset);
  auto ready = [](const std::string& s) { return s.find("\"ready\"") != std::string::npos; };

  Tool boot({"bootstrap"}, env);
  REQUIRE(boot.wait_for_output(ready));

  SUBCASE("serve attaches an agent") {
    Tool patient({"serve", "--agent", "Patient", "--auto-accept"}, env);
    REQUIRE(patient.wait_for_output(ready));
    const auto line = Json::parse(lines_of(patient.out()).at(0));
    CHECK(line.at("role") == "holder");
    CHECK(line.at("ledgerUrl") == ledger_url);
    CHECK(line.at("adminUrl") == "http://127.0.0.1:" + std::to_string(8060 + offset));
    CHECK(run_tool({"serve", "--agent", "Nobody"}, env).rc == 3);
    CHECK(patient.stop() == 0);
  }
  SUBCASE("demo against the served ledger, then export its log") {
    // the steward from bootstrap holds the configured agent ports
    auto demo_env = env;
    demo_env["SSI_EPHEMERAL_PORTS"] = "1";
    const auto r = run_tool({"--attach", ledger_url, "demo"}, demo_env);
    CHECK(r.rc == 0);
    CHECK(json_lines(r.out).back().at("verified") == false);

    const auto dir = scratch_dir("exportlog");
    const auto e = run_tool({"--attach", ledger_url, "export-log", "--out", (dir / "audit.jsonl").string()}, env);
    CHECK(e.rc == 0);
    const auto log = ledger::parse_audit_log(slurp(dir / "audit.jsonl"));
    std::map<std::string, int> kinds;
    for (const auto& txn : log) ++kinds[std::string(ledger::to_string(txn.kind))];
    CHECK(kinds["NYM"] >= 4);  // steward and three endorsers
    CHECK(kinds["SCHEMA"] == 1);
    CHECK(kinds["CRED_DEF"] == 1);
    CHECK(kinds["REV_REG_DEF"] == 1);
    CHECK(kinds["REV_REG_ENTRY"] == 1);  // the definition carries the empty accumulator
    CHECK_NOTHROW(ledger::replay(log));
  }
  CHECK(boot.stop() == 0);
}

TEST_CASE("ssi-desk export-log without a ledger runs the demo") {
  const auto r = run_tool({"export-log"}, {{"SSI_EPHEMERAL_PORTS", "1"}});
  CHECK(r.rc == 0);
  const auto log = ledger::parse_audit_log(r.out);
  CHECK(log.size() > 8);
  CHECK_NOTHROW(ledger::replay(log));
}

TEST_CASE("ssi-desk bench") {
  const auto dir = scratch_dir("bench");
  const auto csv = (dir / "out.csv").string();

  SUBCASE("unknown scenario lists the valid ones") {
    const auto r = run_tool({"bench", "--scenario", "foo", "--auto-bootstrap", "--out", csv});
    CHECK(r.rc == 2);
    for (auto s : bench::all_scenarios()) {
      auto name = std::string(bench::to_string(s));
      std::transform(name.begin(), name.end(), name.begin(), [](char ch) { return ch == '_' ? '-' : std::tolower(ch); });
      CHECK(r.err.find(name) != std::string::npos);
    }
    CHECK(!std::filesystem::exists(csv));
  }
  SUBCASE("missing scenario, bad mode, zero requests") {
    CHECK(run_tool({"bench", "--auto-bootstrap"}).rc == 2);
    CHECK(run_tool({"bench", "--scenario", "register-schema", "--mode", "bursty", "--auto-bootstrap"}).rc == 2);
    CHECK(run_tool({"bench", "--scenario", "register-schema", "--n", "0", "--auto-bootstrap"}).rc == 2);
  }
  SUBCASE("connection invitation, 10 sequential") {
    const auto r = run_tool({"bench", "--scenario", "connection-invitation", "--n", "10", "--mode", "sequential",
                             "--auto-bootstrap", "--out", csv});
    CHECK(r.rc == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == bench::kCsvHeader);
    const auto row = bench::parse_csv_row(lines[1]);
    CHECK(row.scenario == bench::Scenario::ConnectionInvitation);
    CHECK(row.n_requests == 10);
    CHECK(row.errors == 0);
    CHECK(bench::read_samples(bench::samples_path(csv)).size() == 10);
    CHECK(r.out.find("CONNECTION_INVITATION") != std::string::npos);
  }
  SUBCASE("issue credential, 100 concurrent with a 10 s ramp-up") {
    const auto r = run_tool({"bench", "--scenario", "issue-credential", "--n", "100", "--rampup", "10", "--mode",
                             "concurrent", "--auto-bootstrap", "--out", csv});
    CHECK(r.rc == 0);
    const auto rows = bench::read_csv(csv);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mode == bench::Mode::Concurrent);
    CHECK(rows[0].rampup_s == 10);
    CHECK(rows[0].n_requests == 100);
    CHECK(rows[0].errors == 0);
  }
  SUBCASE("targets that are not running") {
    const auto r = run_tool({"bench", "--scenario", "register-schema", "--targets",
                             "issuer=http://127.0.0.1:1,holder=http://127.0.0.1:1,verifier=http://127.0.0.1:1",
                             "--out", csv});
    CHECK(r.rc == 3);
    CHECK(r.err.find("TargetDown") != std::string::npos);
  }
  SUBCASE("process suite") {
    const auto r = run_tool({"bench", "--process", "2"});
    CHECK(r.rc == 0);
    const auto j = Json::parse(lines_of(r.out).at(0));
    CHECK(j.at("exchanges") == 2);
    CHECK(j.at("phases").contains("exchangeCredential"));
  }
}
