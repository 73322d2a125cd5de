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
#include "ssi/cli/commands.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ssi/authz/http.hpp"
#include "ssi/bench/process_suite.hpp"
#include "ssi/bench/runner.hpp"
#include "ssi/cli/config.hpp"
#include "ssi/cli/scenario.hpp"
#include "ssi/ledger/replay.hpp"

namespace ssi::cli {
namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

void serve_until_signal() {
  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_stop.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

int fail(std::ostream& err, const std::string& what, const Error& e) {
  err << what << ": " << e.what() << "\n";
  return exit_code_for(e.code());
}

std::string admin_url(const AgentConfig& a) { return "http://" + a.endpoint + ":" + std::to_string(a.port); }

std::string default_ledger_url(const ScenarioConfig& c) {
  return "http://127.0.0.1:" + std::to_string(c.ledger_port);
}

bench::Targets parse_targets(const std::string& s, const ScenarioConfig* c) {
  bench::Targets t;
  if (s.empty()) {
    if (!c) throw Error(ErrorCode::InvalidArgument, "no targets");
    t.issuer = admin_url(c->by_role("issuer"));
    t.holder = admin_url(c->by_role("holder"));
    t.verifier = admin_url(c->by_role("verifier"));
    return t;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "target without role: " + item);
    const auto role = item.substr(0, eq);
    const auto url = item.substr(eq + 1);
    if (role == "issuer") {
      t.issuer = url;
    } else if (role == "holder") {
      t.holder = url;
    } else if (role == "verifier") {
      t.verifier = url;
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown target role " + role);
    }
  }
  if (t.issuer.empty() || t.holder.empty() || t.verifier.empty()) {
    throw Error(ErrorCode::InvalidArgument, "targets need issuer, holder and verifier");
  }
  return t;
}

void print_report(std::ostream& out, const bench::MetricsReport& r) {
  out << fmt::format("{:<24} {:>6} {:<10} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>6}\n", "scenario", "n", "mode",
                     "rampup", "min_ms", "max_ms", "avg_ms", "stddev", "rps", "errors");
  out << fmt::format("{:<24} {:>6} {:<10} {:>6} {:>10.3f} {:>10.3f} {:>10.3f} {:>10.3f} {:>10.3f} {:>6}\n",
                     bench::to_string(r.scenario), r.n_requests, bench::to_string(r.mode), r.rampup_s, r.min_ms,
                     r.max_ms, r.avg_ms, r.stddev, r.throughput_rps, r.errors);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Malformed:
    case ErrorCode::IoError:
    case ErrorCode::InvalidGenesis:
    case ErrorCode::InsufficientNodes:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSeed:
      return kExitUsage;
    default:
      return kExitProtocol;
  }
}

int cmd_bootstrap(const CommonOptions& o, bool once, std::ostream& out, std::ostream& err) {
  try {
    const auto config = load_config(o.config);
    auto spec = environment_spec(config);
    const auto steward = config.by_role("steward");
    std::erase_if(spec.agents, [](const bench::AgentSpec& a) { return a.role != "steward"; });
    auto env = bench::Environment::start(spec);
    const auto nym = env->ledger()->get_nym(env->steward_did());
    out << Json{{"event", "ready"},
                {"nodes", env->pool()->size()},
                {"quorum", env->pool()->quorum()},
                {"stewardDid", env->steward_did()},
                {"stewardRole", ledger::to_string(nym.role)},
                {"ledgerUrl", env->ledger_url()},
                {"stewardAdmin", env->steward().admin_url()}}
               .dump()
        << std::endl;
    if (!once) serve_until_signal();
    env->stop();
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, "bootstrap", e);
  }
}

int cmd_demo(const CommonOptions& o, bool skip_revoke, std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    config = load_config(o.config);
  } catch (const Error& e) {
    return fail(err, "demo", e);
  }
  DemoOptions d;
  d.skip_revoke = skip_revoke;
  d.attach_url = o.attach;
  d.on_event = [&](const Json& line) { out << line.dump() << std::endl; };
  const auto t0 = std::chrono::steady_clock::now();
  try {
    run_demo(config, d);
  } catch (const StepError& e) {
    out << Json{{"step", e.step()}, {"error", to_string(e.code())}}.dump() << std::endl;
    err << "demo failed: " << e.what() << "\n";
    return e.step() == "bootstrap" ? exit_code_for(e.code()) : kExitProtocol;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  err << "demo completed in " << ms.count() << " ms\n";
  return kExitOk;
}

int cmd_bench(const CommonOptions& o, const BenchOptions& b, std::ostream& out, std::ostream& err) {
  if (b.process) {
    try {
      const auto d = bench::run_process_suite(*b.process);
      out << Json{{"exchanges", *b.process}, {"phases", bench::to_json(d)}}.dump() << std::endl;
      return kExitOk;
    } catch (const Error& e) {
      return fail(err, "process suite", e);
    }
  }

  bench::LoadProfile p;
  try {
    p.scenario = bench::scenario_from_string(b.scenario);
    p.mode = bench::mode_from_string(b.mode);
    p.n_requests = b.n;
    p.rampup_s = b.rampup_s;
    bench::validate(p);
  } catch (const Error& e) {
    err << "bench: " << e.what() << "\nvalid scenarios: " << bench::scenario_names() << "\n";
    return kExitUsage;
  }

  try {
    std::unique_ptr<bench::Environment> env;
    bench::Targets t;
    if (b.auto_bootstrap) {
      env = bench::Environment::start(bench::default_spec());
      env->enroll_endorsers();
      t = {env->by_role("issuer").admin_url(), env->by_role("holder").admin_url(),
           env->by_role("verifier").admin_url()};
    } else if (!b.targets.empty()) {
      t = parse_targets(b.targets, nullptr);
    } else {
      const auto config = load_config(o.config);
      t = parse_targets("", &config);
    }
    const auto result = bench::run(p, t);
    bench::export_csv(result.report, result.samples, b.out);
    print_report(out, result.report);
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, "bench", e);
  }
}

int cmd_serve(const CommonOptions& o, const std::string& label, bool auto_accept, std::ostream& out,
              std::ostream& err) {
  try {
    const auto config = load_config(o.config);
    const auto& mine = config.agent(label);
    auto spec = environment_spec(config);
    spec.attach_url = o.attach.empty() ? default_ledger_url(config) : o.attach;
    std::erase_if(spec.agents, [&](const bench::AgentSpec& a) { return a.label != label; });
    spec.agents.at(0).auto_accept = auto_accept;

    // Rules keep their {NAME} placeholders here: cred def ids are only known
    // to whoever registers them.
    std::optional<authz::Provider> provider;
    if (mine.role == "verifier" && !config.authz_rules_path.empty()) {
      provider.emplace(crypto::generate_keypair(), authz::load_rules(config.authz_rules_path), system_clock());
      spec.before_start = [&](agent::Agent& a, const bench::AgentSpec&) { authz::mount(a, *provider); };
    }
    auto env = bench::Environment::start(spec);
    auto& a = env->agent(label);
    out << Json{{"event", "ready"},
                {"label", label},
                {"role", mine.role},
                {"adminUrl", a.admin_url()},
                {"endpoint", a.endpoint()},
                {"ledgerUrl", spec.attach_url}}
               .dump()
        << std::endl;
    serve_until_signal();
    env->stop();
    return kExitOk;
  } catch (const Error& e) {
    return fail(err, "serve", e);
  }
}

int cmd_export_log(const CommonOptions& o, const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  std::vector<ledger::Transaction> log;
  try {
    if (!o.attach.empty()) {
      log = ledger::HttpLedger(o.attach).audit_log();
    } else {
      const auto config = load_config(o.config);
      DemoOptions d;
      d.before_stop = [&](bench::Environment& env) { log = env.pool()->audit_log(0); };
      run_demo(config, d);
    }
    ledger::replay(log);  // refuse to export a broken chain
    const auto text = ledger::export_audit_log(log);
    if (path.empty()) {
      out << text;
    } else {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (!(f << text)) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    err << "exported " << log.size() << " transactions; replay ok\n";
    return kExitOk;
  } catch (const StepError& e) {
    err << "export-log: demo failed: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const Error& e) {
    return fail(err, "export-log", e);
  }
}

int run_cli(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("ssi");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  spdlog::cfg::load_env_levels();

  CLI::App app{"Self-sovereign identity desk: ledger pool, agents, demo workflow and load harness"};
  app.require_subcommand(1);
  CommonOptions common;
  common.config = default_config_path();
  app.add_option("--config", common.config, "scenario config (JSON)");
  app.add_option("--attach", common.attach, "ledger URL served by another process");

  bool once = false;
  auto* boot = app.add_subcommand("bootstrap", "start the 4-node pool, ledger server and steward");
  boot->add_flag("--once", once, "exit after the pool is up");

  bool skip_revoke = false;
  auto* demo = app.add_subcommand("demo", "run the Government -> Patient -> Hospital workflow");
  demo->add_flag("--skip-revoke", skip_revoke, "leave the credential valid");

  BenchOptions bo;
  std::size_t process = 0;
  auto* bench = app.add_subcommand("bench", "load-test one scenario and append a CSV row");
  bench->add_option("--scenario", bo.scenario, bench::scenario_names());
  bench->add_option("--n", bo.n, "requests");
  bench->add_option("--rampup", bo.rampup_s, "ramp-up seconds");
  bench->add_option("--mode", bo.mode, "sequential or concurrent");
  bench->add_option("--out", bo.out, "CSV path; raw samples go next to it");
  bench->add_flag("--auto-bootstrap", bo.auto_bootstrap, "start a private pool and agents");
  bench->add_option("--targets", bo.targets, "issuer=URL,holder=URL,verifier=URL");
  auto* proc = bench->add_option("--process", process, "run the process-time suite with N exchanges");

  std::string label;
  bool auto_accept = false;
  auto* serve = app.add_subcommand("serve", "run one configured agent");
  serve->add_option("--agent", label, "agent label")->required();
  serve->add_flag("--auto-accept", auto_accept, "accept every invitation, offer and proof request");

  std::filesystem::path log_out;
  auto* exp = app.add_subcommand("export-log", "write the ledger audit log as JSON lines");
  exp->add_option("--out", log_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (bench->parsed() && proc->count() > 0) bo.process = process;
  if (bench->parsed() && !bo.process && bo.scenario.empty()) {
    std::cerr << "bench: --scenario is required\nvalid scenarios: " << bench::scenario_names() << "\n";
    return kExitUsage;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (boot->parsed()) return cmd_bootstrap(common, once, out, err);
  if (demo->parsed()) return cmd_demo(common, skip_revoke, out, err);
  if (bench->parsed()) return cmd_bench(common, bo, out, err);
  if (serve->parsed()) return cmd_serve(common, label, auto_accept, out, err);
  return cmd_export_log(common, log_out, out, err);
}

}  // namespace ssi::cli
