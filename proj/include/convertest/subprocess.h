// Copyright 2026 The ConVerTest Authors
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

#ifndef CONVERTEST_SUBPROCESS_H_
#define CONVERTEST_SUBPROCESS_H_

#include <sys/types.h>

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace convertest {

// A child process whose stdin/stdout are connected to pipes and spoken to in
// newline-delimited records. stderr is inherited.
class ChildProcess {
 public:
  enum class ReadStatus { kLine, kTimeout, kEof };

  // Throws Error when the program cannot be started.
  static std::unique_ptr<ChildProcess> Spawn(const std::vector<std::string>& argv);

  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  // Appends '\n'. Returns false when the child has closed its stdin.
  bool WriteLine(std::string_view line);

  // Reads one line (without its '\n') into `line`.
  ReadStatus ReadLine(std::string& line, std::chrono::milliseconds timeout);

  // SIGKILL and reap. Idempotent.
  void Kill();

  pid_t pid() const { return pid_; }

 private:
  ChildProcess(pid_t pid, int in_fd, int out_fd)
      : pid_(pid), in_fd_(in_fd), out_fd_(out_fd) {}

  pid_t pid_;
  int in_fd_;
  int out_fd_;
  std::string buffer_;
  bool eof_ = false;
};

// Splits a command line on whitespace; no quoting rules.
std::vector<std::string> SplitCommand(std::string_view command);

}  // namespace convertest

#endif  // CONVERTEST_SUBPROCESS_H_
