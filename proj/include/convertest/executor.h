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

#ifndef CONVERTEST_EXECUTOR_H_
#define CONVERTEST_EXECUTOR_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convertest/core.h"
#include "json.hpp"

namespace convertest {

enum class ExecutorMode { kHarness, kSimulated };

std::string_view ToString(ExecutorMode mode);
ExecutorMode ParseExecutorMode(std::string_view s);

struct ExecutorConfig {
  static constexpr int kMinTimeoutMs = 100;

  int timeout_ms = 10000;
  int worker_count = DefaultWorkerCount();
  // Command line of the harness server, split on whitespace.
  std::string harness_path;
  ExecutorMode mode = ExecutorMode::kHarness;

  static int DefaultWorkerCount();
  // Throws PreconditionError on timeout_ms < 100 or worker_count < 1.
  void Check() const;
};

// One (solution, setup, test) execution request.
struct ExecPayload {
  std::string solution;
  std::string setup;
  std::string test;
  int timeout_ms = 10000;
};

struct Mutant {
  std::string mutant_id;
  std::string source;
  std::string op;
  std::string location;

  bool operator==(const Mutant&) const = default;
};

struct MutantList {
  std::vector<Mutant> mutants;
  // Set when the source could not be mutated.
  std::string diagnostic;
};

// Executes payloads one at a time. Not thread-safe; each worker owns one.
class ExecSession {
 public:
  virtual ~ExecSession() = default;
  virtual ExecutionOutcome Exec(const ExecPayload& payload) = 0;
};

class Executor {
 public:
  virtual ~Executor() = default;
  // Throws FatalError when no session can be established.
  virtual std::unique_ptr<ExecSession> OpenSession() = 0;
  // Deterministic mutants of `source`.
  virtual MutantList Mutants(const std::string& source) = 0;

  // Idle-session pool so that sessions outlive a single matrix.
  std::unique_ptr<ExecSession> Acquire();
  void Release(std::unique_ptr<ExecSession> session);

 private:
  std::mutex pool_mu_;
  std::vector<std::unique_ptr<ExecSession>> idle_;
};

// ---- wire protocol ----

inline constexpr char kHarnessProtocolVersion[] = "convertest-harness/1";

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// {"id": id, "cmd": cmd, "payload": payload} serialized on one line.
std::string EncodeRequest(int id, std::string_view cmd,
                          const nlohmann::json& payload);
nlohmann::json ExecPayloadJson(const ExecPayload& payload);

// Parses one response line and checks its id. Throws ProtocolError on
// malformed JSON, a missing field or an id mismatch.
nlohmann::json DecodeResponse(std::string_view line, int expected_id);
// Covered lines outside 1..line_count(solution) are dropped; a pass never
// carries a diagnostic.
ExecutionOutcome OutcomeFromResponse(const nlohmann::json& response,
                                     std::string_view solution);
MutantList MutantsFromResponse(const nlohmann::json& response);

class HarnessSession;

// Drives harness server processes, one per session.
class HarnessExecutor : public Executor {
 public:
  // Extra time granted beyond a pair's timeout before the server is
  // presumed hung and killed.
  static constexpr std::chrono::milliseconds kDefaultGrace{2000};
  static constexpr std::chrono::milliseconds kDefaultHandshake{15000};

  explicit HarnessExecutor(std::vector<std::string> argv,
                           std::chrono::milliseconds grace = kDefaultGrace,
                           std::chrono::milliseconds handshake = kDefaultHandshake);
  ~HarnessExecutor() override;

  std::unique_ptr<ExecSession> OpenSession() override;
  MutantList Mutants(const std::string& source) override;
  // Tree-level canonical key from the server; nullopt when it reports an
  // error for the source.
  std::optional<std::string> Canonicalize(const std::string& source);

  // Number of server processes started so far, restarts included.
  int spawn_count() const;

 private:
  friend class HarnessSession;
  std::vector<std::string> argv_;
  std::chrono::milliseconds grace_;
  std::chrono::milliseconds handshake_;
  mutable std::mutex mu_;
  int spawn_count_ = 0;
  std::mutex control_mu_;
  // Serves mutants and canonicalize requests.
  std::unique_ptr<HarnessSession> control_;
};

// In-memory executor driven by an oracle over (solution, test) texts.
class SimulatedExecutor : public Executor {
 public:
  // nullopt means the oracle has no entry for the pair.
  using Oracle = std::function<std::optional<ExecutionOutcome>(
      const std::string& solution, const std::string& test)>;
  using MutantOracle = std::function<MutantList(const std::string& source)>;

  explicit SimulatedExecutor(Oracle oracle, MutantOracle mutants = {});

  // Fixture document:
  //   {"solutions": [str...], "tests": [str...],
  //    "outcomes": [{"solution": i, "test": j, "status": "pass",
  //                  "covered_lines": [int...], "wall_ms": 0,
  //                  "diagnostic": ""}...],
  //    "mutants": [{"solution": i, "mutants": [{"mutant_id": str,
  //                 "solution": k, "operator": str, "location": str}...]}...]}
  static std::shared_ptr<SimulatedExecutor> FromFixture(const nlohmann::json& j);
  static std::shared_ptr<SimulatedExecutor> LoadFixture(
      const std::filesystem::path& path);

  std::unique_ptr<ExecSession> OpenSession() override;
  MutantList Mutants(const std::string& source) override;

  // Throws FatalError naming the pair when the oracle has no entry.
  ExecutionOutcome Lookup(const std::string& solution,
                          const std::string& test) const;

 private:
  Oracle oracle_;
  MutantOracle mutants_;
};

// Builds the executor described by `config`; simulated mode needs a fixture.
std::shared_ptr<Executor> MakeExecutor(
    const ExecutorConfig& config,
    const std::optional<std::filesystem::path>& fixture);

// ---- operations ----

// Runs every payload on `config.worker_count` sessions. Results are in
// payload order whatever the interleaving.
std::vector<ExecutionOutcome> RunPayloads(const std::vector<ExecPayload>& payloads,
                                          Executor& executor,
                                          const ExecutorConfig& config);

// Full candidates x tests grid.
ExecutionMatrix RunMatrix(const std::string& task_id,
                          const std::vector<CodeCandidate>& candidates,
                          const std::vector<TestCase>& tests,
                          const std::string& setup, Executor& executor,
                          const ExecutorConfig& config);

std::vector<ExecutionOutcome> RunAgainstSource(const std::string& source,
                                               const std::vector<TestCase>& tests,
                                               const std::string& setup,
                                               Executor& executor,
                                               const ExecutorConfig& config);

MutantList RequestMutants(const std::string& source, Executor& executor);

}  // namespace convertest

#endif  // CONVERTEST_EXECUTOR_H_
