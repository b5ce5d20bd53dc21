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

#include "convertest/executor.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "convertest/digest.h"
#include "convertest/file_util.h"
#include "convertest/subprocess.h"

namespace convertest {

using nlohmann::json;

std::string_view ToString(ExecutorMode mode) {
  return mode == ExecutorMode::kHarness ? "harness" : "simulated";
}

ExecutorMode ParseExecutorMode(std::string_view s) {
  if (s == "harness") return ExecutorMode::kHarness;
  if (s == "simulated") return ExecutorMode::kSimulated;
  throw Error("unknown executor mode '" + std::string(s) + "'");
}

int ExecutorConfig::DefaultWorkerCount() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void ExecutorConfig::Check() const {
  if (timeout_ms < kMinTimeoutMs) {
    throw PreconditionError("timeout_ms must be at least " +
                            std::to_string(kMinTimeoutMs) + ", got " +
                            std::to_string(timeout_ms));
  }
  if (worker_count < 1) {
    throw PreconditionError("worker_count must be at least 1, got " +
                            std::to_string(worker_count));
  }
}

std::unique_ptr<ExecSession> Executor::Acquire() {
  {
    std::lock_guard<std::mutex> lock(pool_mu_);
    if (!idle_.empty()) {
      std::unique_ptr<ExecSession> session = std::move(idle_.back());
      idle_.pop_back();
      return session;
    }
  }
  return OpenSession();
}

void Executor::Release(std::unique_ptr<ExecSession> session) {
  if (!session) return;
  std::lock_guard<std::mutex> lock(pool_mu_);
  idle_.push_back(std::move(session));
}

// ---- wire protocol ----

std::string EncodeRequest(int id, std::string_view cmd, const json& payload) {
  json request = {{"id", id}, {"cmd", cmd}, {"payload", payload}};
  return request.dump(-1, ' ', false, json::error_handler_t::replace);
}

json ExecPayloadJson(const ExecPayload& payload) {
  return {{"solution", payload.solution},
          {"setup", payload.setup},
          {"test", payload.test},
          {"timeout_ms", payload.timeout_ms}};
}

json DecodeResponse(std::string_view line, int expected_id) {
  json response = json::parse(line, nullptr, false);
  if (response.is_discarded() || !response.is_object()) {
    throw ProtocolError("malformed response line");
  }
  const auto id = response.find("id");
  if (id == response.end() || !id->is_number_integer()) {
    throw ProtocolError("response without an integer id");
  }
  if (id->get<int>() != expected_id) {
    throw ProtocolError("response id " + std::to_string(id->get<int>()) +
                        " does not match request id " +
                        std::to_string(expected_id));
  }
  return response;
}

ExecutionOutcome OutcomeFromResponse(const json& response,
                                     std::string_view solution) {
  ExecutionOutcome outcome;
  try {
    outcome.status = ParseExecStatus(response.at("status").get<std::string>());
    const int line_count = LineCount(solution);
    for (const json& line : response.value("covered_lines", json::array())) {
      const int n = line.get<int>();
      if (n >= 1 && n <= line_count) outcome.covered_lines.insert(n);
    }
    outcome.wall_ms = response.value("wall_ms", std::int64_t{0});
    outcome.diagnostic = response.value("diagnostic", std::string());
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("bad exec response: ") + e.what());
  } catch (const Error& e) {
    throw ProtocolError(std::string("bad exec response: ") + e.what());
  }
  if (outcome.passed()) outcome.diagnostic.clear();
  return outcome;
}

MutantList MutantsFromResponse(const json& response) {
  MutantList list;
  try {
    list.diagnostic = response.value("diagnostic", std::string());
    for (const json& m : response.value("mutants", json::array())) {
      Mutant mutant;
      mutant.mutant_id = m.at("mutant_id").get<std::string>();
      mutant.source = m.at("source").get<std::string>();
      mutant.op = m.value("operator", std::string());
      const json& location = m.value("location", json(""));
      mutant.location =
          location.is_string() ? location.get<std::string>() : location.dump();
      list.mutants.push_back(std::move(mutant));
    }
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("bad mutants response: ") + e.what());
  }
  return list;
}

// ---- harness ----

class HarnessSession : public ExecSession {
 public:
  explicit HarnessSession(HarnessExecutor& owner) : owner_(owner) { Start(); }

  ExecutionOutcome Exec(const ExecPayload& payload) override {
    const int id = ++next_id_;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - start)
          .count();
    };
    ExecutionOutcome outcome;
    outcome.status = ExecStatus::kError;
    if (!child_->WriteLine(EncodeRequest(id, "exec", ExecPayloadJson(payload)))) {
      Restart();
      outcome.diagnostic = "harness closed its input";
      return outcome;
    }
    std::string line;
    const auto wait = std::chrono::milliseconds(payload.timeout_ms) + owner_.grace_;
    switch (child_->ReadLine(line, wait)) {
      case ChildProcess::ReadStatus::kTimeout:
        Restart();
        outcome.status = ExecStatus::kTimeout;
        outcome.wall_ms = elapsed();
        outcome.diagnostic = "harness did not answer within " +
                             std::to_string(wait.count()) + " ms";
        return outcome;
      case ChildProcess::ReadStatus::kEof:
        Restart();
        outcome.wall_ms = elapsed();
        outcome.diagnostic = "harness exited during execution";
        return outcome;
      case ChildProcess::ReadStatus::kLine:
        break;
    }
    try {
      return OutcomeFromResponse(DecodeResponse(line, id), payload.solution);
    } catch (const ProtocolError& e) {
      Restart();
      outcome.wall_ms = elapsed();
      outcome.diagnostic = std::string("protocol desync: ") + e.what();
      return outcome;
    }
  }

  // Request/response for non-exec commands. Throws ProtocolError after
  // restarting the server when the exchange fails.
  json Call(std::string_view cmd, const json& payload) {
    const int id = ++next_id_;
    std::string line;
    if (!child_->WriteLine(EncodeRequest(id, cmd, payload))) {
      Restart();
      throw ProtocolError("harness closed its input");
    }
    const auto status =
        child_->ReadLine(line, owner_.handshake_ + owner_.grace_);
    if (status != ChildProcess::ReadStatus::kLine) {
      Restart();
      throw ProtocolError(std::string("no answer to '") + std::string(cmd) + "'");
    }
    try {
      return DecodeResponse(line, id);
    } catch (const ProtocolError&) {
      Restart();
      throw;
    }
  }

 private:
  void Start() {
    try {
      child_ = ChildProcess::Spawn(owner_.argv_);
    } catch (const Error& e) {
      throw FatalError(std::string("harness unreachable: ") + e.what());
    }
    {
      std::lock_guard<std::mutex> lock(owner_.mu_);
      ++owner_.spawn_count_;
    }
    const int id = ++next_id_;
    std::string line;
    if (!child_->WriteLine(EncodeRequest(id, "version", json::object())) ||
        child_->ReadLine(line, owner_.handshake_) !=
            ChildProcess::ReadStatus::kLine) {
      child_->Kill();
      throw FatalError("harness unreachable: no answer to the version handshake");
    }
    std::string version;
    try {
      version = DecodeResponse(line, id).value("version", std::string());
    } catch (const ProtocolError& e) {
      child_->Kill();
      throw FatalError(std::string("harness handshake failed: ") + e.what());
    }
    if (version != kHarnessProtocolVersion) {
      child_->Kill();
      throw FatalError("harness speaks '" + version + "', expected '" +
                       kHarnessProtocolVersion + "'");
    }
  }

  void Restart() {
    child_->Kill();
    child_.reset();
    Start();
  }

  HarnessExecutor& owner_;
  std::unique_ptr<ChildProcess> child_;
  int next_id_ = 0;
};

HarnessExecutor::HarnessExecutor(std::vector<std::string> argv,
                                 std::chrono::milliseconds grace,
                                 std::chrono::milliseconds handshake)
    : argv_(std::move(argv)), grace_(grace), handshake_(handshake) {
  if (argv_.empty()) throw FatalError("no harness command configured");
}

HarnessExecutor::~HarnessExecutor() = default;

std::unique_ptr<ExecSession> HarnessExecutor::OpenSession() {
  return std::make_unique<HarnessSession>(*this);
}

MutantList HarnessExecutor::Mutants(const std::string& source) {
  std::lock_guard<std::mutex> lock(control_mu_);
  if (!control_) control_ = std::make_unique<HarnessSession>(*this);
  try {
    return MutantsFromResponse(control_->Call("mutants", {{"source", source}}));
  } catch (const ProtocolError& e) {
    return MutantList{{}, e.what()};
  }
}

std::optional<std::string> HarnessExecutor::Canonicalize(const std::string& source) {
  std::lock_guard<std::mutex> lock(control_mu_);
  if (!control_) control_ = std::make_unique<HarnessSession>(*this);
  const json response = control_->Call("canonicalize", {{"source", source}});
  const auto key = response.find("key");
  if (key == response.end() || !key->is_string()) return std::nullopt;
  return key->get<std::string>();
}

int HarnessExecutor::spawn_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return spawn_count_;
}

// ---- simulated ----

namespace {

std::string Describe(const std::string& source) {
  std::string first = source.substr(0, source.find('\n'));
  if (first.size() > 40) first = first.substr(0, 40) + "...";
  return Sha256Hex(source).substr(0, 8) + " (" + first + ")";
}

class SimulatedSession : public ExecSession {
 public:
  explicit SimulatedSession(const SimulatedExecutor& owner) : owner_(owner) {}
  ExecutionOutcome Exec(const ExecPayload& payload) override {
    return owner_.Lookup(payload.solution, payload.test);
  }

 private:
  const SimulatedExecutor& owner_;
};

ExecutionOutcome OutcomeFromFixture(const json& j) {
  ExecutionOutcome outcome;
  outcome.status = ParseExecStatus(j.at("status").get<std::string>());
  for (int line : j.value("covered_lines", std::vector<int>{})) {
    outcome.covered_lines.insert(line);
  }
  outcome.wall_ms = j.value("wall_ms", std::int64_t{0});
  outcome.diagnostic = j.value("diagnostic", std::string());
  return outcome;
}

}  // namespace

SimulatedExecutor::SimulatedExecutor(Oracle oracle, MutantOracle mutants)
    : oracle_(std::move(oracle)), mutants_(std::move(mutants)) {}

std::shared_ptr<SimulatedExecutor> SimulatedExecutor::FromFixture(const json& j) {
  using PairKey = std::pair<std::string, std::string>;
  auto outcomes = std::make_shared<std::map<PairKey, ExecutionOutcome>>();
  auto mutants = std::make_shared<std::map<std::string, MutantList>>();
  try {
    const auto solutions = j.at("solutions").get<std::vector<std::string>>();
    const auto tests = j.value("tests", std::vector<std::string>{});
    for (const json& o : j.value("outcomes", json::array())) {
      const auto si = o.at("solution").get<std::size_t>();
      const auto ti = o.at("test").get<std::size_t>();
      (*outcomes)[{solutions.at(si), tests.at(ti)}] = OutcomeFromFixture(o);
    }
    for (const json& entry : j.value("mutants", json::array())) {
      MutantList list;
      for (const json& m : entry.at("mutants")) {
        list.mutants.push_back(
            Mutant{m.at("mutant_id").get<std::string>(),
                   solutions.at(m.at("solution").get<std::size_t>()),
                   m.value("operator", std::string()),
                   m.value("location", std::string())});
      }
      list.diagnostic = entry.value("diagnostic", std::string());
      (*mutants)[solutions.at(entry.at("solution").get<std::size_t>())] =
          std::move(list);
    }
  } catch (const json::exception& e) {
    throw FatalError(std::string("bad executor fixture: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw FatalError(std::string("executor fixture index out of range: ") +
                     e.what());
  }
  Oracle oracle = [outcomes](const std::string& solution,
                             const std::string& test)
      -> std::optional<ExecutionOutcome> {
    auto it = outcomes->find({solution, test});
    if (it == outcomes->end()) return std::nullopt;
    return it->second;
  };
  MutantOracle mutant_oracle;
  if (j.contains("mutants")) {
    mutant_oracle = [mutants](const std::string& source) {
      auto it = mutants->find(source);
      if (it == mutants->end()) {
        throw FatalError("executor fixture has no mutants for solution " +
                         Describe(source));
      }
      return it->second;
    };
  }
  return std::make_shared<SimulatedExecutor>(std::move(oracle),
                                             std::move(mutant_oracle));
}

std::shared_ptr<SimulatedExecutor> SimulatedExecutor::LoadFixture(
    const std::filesystem::path& path) {
  json j = json::parse(ReadFile(path), nullptr, false);
  if (j.is_discarded()) {
    throw FatalError("executor fixture " + path.string() + " is not valid JSON");
  }
  return FromFixture(j);
}

std::unique_ptr<ExecSession> SimulatedExecutor::OpenSession() {
  return std::make_unique<SimulatedSession>(*this);
}

MutantList SimulatedExecutor::Mutants(const std::string& source) {
  if (!mutants_) return MutantList{{}, "executor provides no mutants"};
  return mutants_(source);
}

ExecutionOutcome SimulatedExecutor::Lookup(const std::string& solution,
                                           const std::string& test) const {
  std::optional<ExecutionOutcome> outcome = oracle_(solution, test);
  if (!outcome) {
    throw FatalError("simulated executor has no entry for solution " +
                     Describe(solution) + " x test " + Describe(test));
  }
  return *outcome;
}

std::shared_ptr<Executor> MakeExecutor(
    const ExecutorConfig& config,
    const std::optional<std::filesystem::path>& fixture) {
  config.Check();
  if (config.mode == ExecutorMode::kSimulated) {
    if (!fixture) throw FatalError("simulated executor needs a fixture file");
    return SimulatedExecutor::LoadFixture(*fixture);
  }
  return std::make_shared<HarnessExecutor>(SplitCommand(config.harness_path));
}

// ---- operations ----

std::vector<ExecutionOutcome> RunPayloads(const std::vector<ExecPayload>& payloads,
                                          Executor& executor,
                                          const ExecutorConfig& config) {
  config.Check();
  std::vector<ExecutionOutcome> results(payloads.size());
  if (payloads.empty()) return results;

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex error_mu;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      std::unique_ptr<ExecSession> session = executor.Acquire();
      while (!stop.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= payloads.size()) break;
        results[i] = session->Exec(payloads[i]);
      }
      executor.Release(std::move(session));
    } catch (...) {
      stop.store(true);
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(config.worker_count), payloads.size());
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

ExecutionMatrix RunMatrix(const std::string& task_id,
                          const std::vector<CodeCandidate>& candidates,
                          const std::vector<TestCase>& tests,
                          const std::string& setup, Executor& executor,
                          const ExecutorConfig& config) {
  std::vector<ExecPayload> payloads;
  payloads.reserve(candidates.size() * tests.size());
  for (const CodeCandidate& candidate : candidates) {
    for (const TestCase& test : tests) {
      payloads.push_back({candidate.source, setup, test.source, config.timeout_ms});
    }
  }
  std::vector<ExecutionOutcome> flat = RunPayloads(payloads, executor, config);

  ExecutionMatrix matrix;
  matrix.task_id = task_id;
  for (const CodeCandidate& candidate : candidates) {
    matrix.candidates.push_back(candidate.candidate_index);
  }
  for (const TestCase& test : tests) matrix.tests.push_back(test.stub_id);
  matrix.cells.resize(candidates.size());
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(r * tests.size());
    matrix.cells[r].assign(std::make_move_iterator(first),
                           std::make_move_iterator(first + static_cast<std::ptrdiff_t>(tests.size())));
  }
  return matrix;
}

std::vector<ExecutionOutcome> RunAgainstSource(const std::string& source,
                                               const std::vector<TestCase>& tests,
                                               const std::string& setup,
                                               Executor& executor,
                                               const ExecutorConfig& config) {
  std::vector<ExecPayload> payloads;
  payloads.reserve(tests.size());
  for (const TestCase& test : tests) {
    payloads.push_back({source, setup, test.source, config.timeout_ms});
  }
  return RunPayloads(payloads, executor, config);
}

MutantList RequestMutants(const std::string& source, Executor& executor) {
  return executor.Mutants(source);
}

}  // namespace convertest
