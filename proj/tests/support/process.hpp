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

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace ssi::testing {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) {
    if (!l.empty()) out.push_back(l);
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("ssi-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

/// Keeps concurrently running test binaries off each other's fixed ports.
/// Offset ports stay below 32768, where the kernel starts handing out
/// ephemeral client ports; the highest configured port is 9700.
inline int port_offset(int slot) { return 10000 + static_cast<int>((::getpid() + slot * 37) % 130) * 100; }

/// The ssi-desk binary with stdout and stderr sent to files.
class Tool {
 public:
  Tool(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / ("ssi-tool-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    out_ = dir / ("out" + std::to_string(counter) + ".txt");
    err_ = dir / ("err" + std::to_string(counter++) + ".txt");
    pid_ = ::fork();
    if (pid_ == 0) {
      for (const auto& [k, v] : env) ::setenv(k.c_str(), v.c_str(), 1);
      const int o = ::open(out_.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      const int e = ::open(err_.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
      ::dup2(o, 1);
      ::dup2(e, 2);
      std::vector<char*> argv{const_cast<char*>(SSI_TOOL_PATH)};
      for (auto& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      ::execv(SSI_TOOL_PATH, argv.data());
      ::_exit(127);
    }
  }
  ~Tool() {
    if (!done_) {
      ::kill(pid_, SIGKILL);
      wait();
    }
  }

  /// Exit code, or 128 + signal.
  int wait() {
    if (done_) return rc_;
    int status = 0;
    ::waitpid(pid_, &status, 0);
    done_ = true;
    rc_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return rc_;
  }
  int stop() {
    if (!done_) ::kill(pid_, SIGTERM);
    return wait();
  }

  bool wait_for_output(const std::function<bool(const std::string&)>& pred,
                       std::chrono::seconds timeout = std::chrono::seconds(30)) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (std::chrono::steady_clock::now() < deadline) {
      if (pred(out())) return true;
      int status = 0;
      if (!done_ && ::waitpid(pid_, &status, WNOHANG) == pid_) {
        done_ = true;
        rc_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
      }
      if (done_) return pred(out());
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    return false;
  }

  std::string out() const { return slurp(out_); }
  std::string err() const { return slurp(err_); }

 private:
  pid_t pid_ = -1;
  std::filesystem::path out_, err_;
  bool done_ = false;
  int rc_ = -1;
};

struct ToolResult {
  int rc;
  std::string out;
  std::string err;
};

inline ToolResult run_tool(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  Tool t(std::move(args), std::move(env));
  const int rc = t.wait();
  return {rc, t.out(), t.err()};
}

}  // namespace ssi::testing
