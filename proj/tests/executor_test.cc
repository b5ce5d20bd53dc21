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

#include <thread>

#include <gtest/gtest.h>

#include "convertest/subprocess.h"
#include "test_util.h"

namespace convertest {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;

ExecutorConfig Config(int workers = 1, int timeout_ms = 500) {
  ExecutorConfig c;
  c.worker_count = workers;
  c.timeout_ms = timeout_ms;
  return c;
}

std::vector<CodeCandidate> Candidates(int z) {
  std::vector<CodeCandidate> out;
  for (int i = 0; i < z; ++i) {
    out.push_back(CodeCandidate{"t", i, "sol" + std::to_string(i), {}, Generator::kVanilla});
  }
  return out;
}

std::vector<TestCase> Tests(const std::vector<std::string>& sources) {
  std::vector<TestCase> out;
  for (std::size_t j = 0; j < sources.size(); ++j) {
    out.push_back(TestCase{"t", static_cast<int>(j), 0, sources[j], "", Strategy::kSctg});
  }
  return out;
}

std::vector<TestCase> Tests(int m) {
  std::vector<std::string> sources;
  for (int j = 0; j < m; ++j) sources.push_back("test" + std::to_string(j));
  return Tests(sources);
}

// Pass unless the test index exceeds the solution index; (1, 2) times out.
SimulatedExecutor::Oracle GridOracle() {
  return [](const std::string& solution, const std::string& test)
             -> std::optional<ExecutionOutcome> {
    const int i = std::stoi(solution.substr(3));
    const int j = std::stoi(test.substr(4));
    ExecutionOutcome o;
    o.status = j <= i ? ExecStatus::kPass : ExecStatus::kFail;
    if (i == 1 && j == 2) o.status = ExecStatus::kTimeout;
    o.covered_lines = {1};
    return o;
  };
}

TEST(ExecutorConfig, Validation) {
  EXPECT_THROW(Config(1, 99).Check(), PreconditionError);
  EXPECT_THROW(Config(0, 500).Check(), PreconditionError);
  EXPECT_NO_THROW(Config(1, 100).Check());
  EXPECT_EQ(ParseExecutorMode("simulated"), ExecutorMode::kSimulated);
  EXPECT_THROW(ParseExecutorMode("docker"), Error);
}

TEST(Simulated, AllPass) {
  SimulatedExecutor sim([](const std::string&, const std::string&) {
    return std::optional<ExecutionOutcome>(ExecutionOutcome{ExecStatus::kPass, {}, 0, ""});
  });
  ExecutionMatrix m = RunMatrix("t", Candidates(3), Tests(4), "", sim, Config());
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 4u);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(m.PassRow(r).ToString(), "1111");
}

TEST(Simulated, SingleTimeoutCell) {
  SimulatedExecutor sim(GridOracle());
  ExecutionMatrix m = RunMatrix("t", Candidates(3), Tests(4), "", sim, Config());
  EXPECT_EQ(m.at(1, 2).status, ExecStatus::kTimeout);
  EXPECT_EQ(m.PassRow(0).ToString(), "1000");
  EXPECT_EQ(m.PassRow(1).ToString(), "1100");
  EXPECT_EQ(m.PassRow(2).ToString(), "1110");
  EXPECT_EQ(m.at(2, 3).status, ExecStatus::kFail);
  EXPECT_EQ(m.candidates, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(m.tests, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Simulated, WorkerCountDoesNotChangeTheMatrix) {
  SimulatedExecutor sim(GridOracle());
  ExecutionMatrix one = RunMatrix("t", Candidates(3), Tests(4), "", sim, Config(1));
  ExecutionMatrix eight = RunMatrix("t", Candidates(3), Tests(4), "", sim, Config(8));
  EXPECT_EQ(one, eight);
}

TEST(Simulated, MissingEntryIsFatalAndNamesThePair) {
  SimulatedExecutor sim([](const std::string&, const std::string&) {
    return std::optional<ExecutionOutcome>();
  });
  try {
    RunMatrix("t", Candidates(1), Tests(1), "", sim, Config(4));
    FAIL() << "expected FatalError";
  } catch (const FatalError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("(sol0)"), std::string::npos) << what;
    EXPECT_NE(what.find("(test0)"), std::string::npos) << what;
  }
}

TEST(Simulated, RunAgainstSource) {
  SimulatedExecutor sim([](const std::string&, const std::string& test) {
    ExecutionOutcome o;
    o.status = test == "b" ? ExecStatus::kFail
               : test == "slow" ? ExecStatus::kTimeout
                                : ExecStatus::kPass;
    return std::optional<ExecutionOutcome>(o);
  });
  auto out = RunAgainstSource("gt", Tests({"a", "b", "c"}), "", sim, Config());
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[0].passed());
  EXPECT_EQ(out[1].status, ExecStatus::kFail);
  EXPECT_TRUE(out[2].passed());
  EXPECT_TRUE(RunAgainstSource("gt", {}, "", sim, Config()).empty());
  EXPECT_EQ(RunAgainstSource("gt", Tests({"slow"}), "", sim, Config())[0].status,
            ExecStatus::kTimeout);
}

TEST(Simulated, FixtureRoundTrip) {
  json fixture = json::parse(R"json({
    "solutions": ["def f(x):\n    return x < 0", "def f(x):\n    return x <= 0"],
    "tests": ["assert not f(0)"],
    "outcomes": [
      {"solution": 0, "test": 0, "status": "pass", "covered_lines": [1, 2]},
      {"solution": 1, "test": 0, "status": "fail", "diagnostic": "AssertionError"}],
    "mutants": [{"solution": 0, "mutants": [
      {"mutant_id": "rel-0", "solution": 1, "operator": "< -> <=", "location": "2:14"}]}]
  })json");
  auto sim = SimulatedExecutor::FromFixture(fixture);
  const std::string original = fixture["solutions"][0];
  EXPECT_EQ(sim->Lookup(original, "assert not f(0)").covered_lines, (std::set<int>{1, 2}));
  MutantList mutants = RequestMutants(original, *sim);
  ASSERT_EQ(mutants.mutants.size(), 1u);
  EXPECT_EQ(mutants.mutants[0].source, "def f(x):\n    return x <= 0");
  EXPECT_EQ(mutants.mutants[0].op, "< -> <=");
  EXPECT_EQ(sim->Lookup(mutants.mutants[0].source, "assert not f(0)").status,
            ExecStatus::kFail);
  EXPECT_THROW(RequestMutants("other", *sim), FatalError);

  fixture.erase("mutants");
  auto bare = SimulatedExecutor::FromFixture(fixture);
  EXPECT_EQ(bare->Mutants(original).diagnostic, "executor provides no mutants");
  fixture["outcomes"][0]["test"] = 7;
  EXPECT_THROW(SimulatedExecutor::FromFixture(fixture), FatalError);
}

TEST(Simulated, BundledFixtureLoads) {
  ExecutorConfig c = Config();
  c.mode = ExecutorMode::kSimulated;
  EXPECT_NO_THROW(MakeExecutor(c, testing::DataFile("mini_exec.json")));
  EXPECT_THROW(MakeExecutor(c, std::nullopt), FatalError);
}

// ---- wire protocol ----

TEST(Wire, EncodeRequestIsOneJsonLine) {
  ExecPayload p{"def f():\n    return 1", "import math", "assert f() == 1", 500};
  const std::string line = EncodeRequest(7, "exec", ExecPayloadJson(p));
  EXPECT_EQ(line.find('\n'), std::string::npos);
  json j = json::parse(line);
  EXPECT_EQ(j["id"], 7);
  EXPECT_EQ(j["cmd"], "exec");
  EXPECT_EQ(j["payload"]["solution"], p.solution);
  EXPECT_EQ(j["payload"]["setup"], "import math");
  EXPECT_EQ(j["payload"]["timeout_ms"], 500);
  EXPECT_EQ(EncodeRequest(1, "version", json::object()),
            R"({"cmd":"version","id":1,"payload":{}})");
}

TEST(Wire, DecodeResponseChecksTheId) {
  EXPECT_EQ(DecodeResponse(R"({"id": 3, "version": "x"})", 3)["version"], "x");
  EXPECT_THROW(DecodeResponse(R"({"id": 4})", 3), ProtocolError);
  EXPECT_THROW(DecodeResponse("not json", 3), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"([1, 2])", 3), ProtocolError);
  EXPECT_THROW(DecodeResponse(R"({"id": "3"})", 3), ProtocolError);
}

TEST(Wire, OutcomeFromResponse) {
  json r = {{"id", 1}, {"status", "pass"}, {"covered_lines", {0, 1, 2, 9}},
            {"wall_ms", 12}, {"diagnostic", "noise"}};
  ExecutionOutcome o = OutcomeFromResponse(r, "def f():\n    return 1");
  EXPECT_EQ(o.status, ExecStatus::kPass);
  EXPECT_EQ(o.covered_lines, (std::set<int>{1, 2}));
  EXPECT_EQ(o.wall_ms, 12);
  EXPECT_EQ(o.diagnostic, "");
  r["status"] = "fail";
  EXPECT_EQ(OutcomeFromResponse(r, "x").diagnostic, "noise");
  r["status"] = "exploded";
  EXPECT_THROW(OutcomeFromResponse(r, "x"), ProtocolError);
  r.erase("status");
  EXPECT_THROW(OutcomeFromResponse(r, "x"), ProtocolError);
}

TEST(Wire, MutantsFromResponse) {
  json r = {{"id", 1},
            {"mutants", {{{"mutant_id", "m0"}, {"source", "a <= b"},
                          {"operator", "<"}, {"location", {{"line", 1}}}}}}};
  MutantList list = MutantsFromResponse(r);
  ASSERT_EQ(list.mutants.size(), 1u);
  EXPECT_EQ(list.mutants[0].location, R"({"line":1})");
  r["mutants"][0].erase("source");
  EXPECT_THROW(MutantsFromResponse(r), ProtocolError);
}

// ---- harness process ----

std::unique_ptr<HarnessExecutor> Harness(std::vector<std::string> extra = {}) {
  std::vector<std::string> argv = {testing::FakeHarness()};
  argv.insert(argv.end(), extra.begin(), extra.end());
  return std::make_unique<HarnessExecutor>(argv, 300ms, 5000ms);
}

ExecutionOutcome ExecOne(ExecSession& session, const std::string& test,
                         const std::string& solution = "def f():\n    return 1") {
  return session.Exec(ExecPayload{solution, "", test, 200});
}

TEST(Harness, ScriptedStatuses) {
  auto harness = Harness();
  auto session = harness->OpenSession();
  EXPECT_EQ(ExecOne(*session, "#FAKE pass").status, ExecStatus::kPass);
  ExecutionOutcome fail = ExecOne(*session, "#FAKE fail");
  EXPECT_EQ(fail.status, ExecStatus::kFail);
  EXPECT_EQ(fail.diagnostic, "scripted fail");
  EXPECT_EQ(ExecOne(*session, "#FAKE error").status, ExecStatus::kError);
  EXPECT_EQ(ExecOne(*session, "#FAKE timeout").status, ExecStatus::kTimeout);
  EXPECT_EQ(ExecOne(*session, "#FAKE lines 1,2,5").covered_lines, (std::set<int>{1, 2}));
  EXPECT_EQ(ExecOne(*session, "#FAKE expect return 1").status, ExecStatus::kPass);
  EXPECT_EQ(ExecOne(*session, "#FAKE expect return 2").status, ExecStatus::kFail);
  EXPECT_EQ(harness->spawn_count(), 1);
}

TEST(Harness, HangIsKilledAndReportedAsTimeout) {
  auto harness = Harness();
  auto session = harness->OpenSession();
  const auto start = std::chrono::steady_clock::now();
  ExecutionOutcome o = ExecOne(*session, "#FAKE hang");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(o.status, ExecStatus::kTimeout);
  EXPECT_GE(o.wall_ms, 500);
  EXPECT_LT(elapsed, 3s);
  EXPECT_EQ(harness->spawn_count(), 2);
  EXPECT_EQ(ExecOne(*session, "#FAKE pass").status, ExecStatus::kPass);
}

TEST(Harness, CrashGarbageAndDesyncBecomeErrors) {
  auto harness = Harness();
  auto session = harness->OpenSession();
  for (const char* test : {"#FAKE crash", "#FAKE garbage", "#FAKE wrong-id"}) {
    ExecutionOutcome o = ExecOne(*session, test);
    EXPECT_EQ(o.status, ExecStatus::kError) << test;
    EXPECT_FALSE(o.diagnostic.empty()) << test;
    EXPECT_EQ(ExecOne(*session, "#FAKE pass").status, ExecStatus::kPass) << test;
  }
  EXPECT_EQ(harness->spawn_count(), 4);
}

TEST(Harness, UnreachableAtStartIsFatal) {
  HarnessExecutor missing({"/nonexistent/convertest-harness"}, 300ms, 2000ms);
  EXPECT_THROW(missing.OpenSession(), FatalError);
  EXPECT_THROW(Harness({"--exit-at-start"})->OpenSession(), FatalError);
  EXPECT_THROW(HarnessExecutor({}), FatalError);
}

TEST(Harness, VersionMismatchIsFatal) {
  try {
    Harness({"--version", "convertest-harness/0"})->OpenSession();
    FAIL() << "expected FatalError";
  } catch (const FatalError& e) {
    EXPECT_NE(std::string(e.what()).find("convertest-harness/0"), std::string::npos);
  }
}

TEST(Harness, Mutants) {
  auto harness = Harness();
  MutantList list = RequestMutants("def f(a, b):\n    return a < b", *harness);
  ASSERT_EQ(list.mutants.size(), 1u);
  EXPECT_EQ(list.mutants[0].source, "def f(a, b):\n    return a <= b");
  EXPECT_EQ(list.mutants[0].mutant_id, "rel-0");
  MutantList again = RequestMutants("def f(a, b):\n    return a < b", *harness);
  EXPECT_EQ(again.mutants, list.mutants);
  EXPECT_TRUE(RequestMutants("def f():\n    return None", *harness).mutants.empty());
  MutantList bad = RequestMutants("SYNTAX ERROR", *harness);
  EXPECT_TRUE(bad.mutants.empty());
  EXPECT_EQ(bad.diagnostic, "source does not parse");
}

TEST(Harness, Canonicalize) {
  auto harness = Harness();
  EXPECT_EQ(harness->Canonicalize("a = 1\nb = 2"), "a=1b=2");
}

TEST(Harness, ParallelMatrixReusesSessions) {
  auto harness = Harness();
  std::vector<CodeCandidate> candidates = Candidates(3);
  candidates[1].source = "return 1";
  std::vector<TestCase> tests = Tests({"#FAKE expect return 1", "#FAKE pass",
                                       "#FAKE fail", "#FAKE expect sol"});
  ExecutionMatrix one = RunMatrix("t", candidates, tests, "", *harness, Config(1));
  ExecutionMatrix four = RunMatrix("t", candidates, tests, "", *harness, Config(4));
  for (auto* m : {&one, &four}) {
    for (auto& row : m->cells) {
      for (auto& cell : row) cell.wall_ms = 0;
    }
  }
  EXPECT_EQ(one, four);
  EXPECT_EQ(one.PassRow(0).ToString(), "0101");
  EXPECT_EQ(one.PassRow(1).ToString(), "1100");
  const int spawned = harness->spawn_count();
  RunMatrix("t", candidates, tests, "", *harness, Config(4));
  EXPECT_EQ(harness->spawn_count(), spawned);
}

TEST(Subprocess, SplitCommand) {
  EXPECT_EQ(SplitCommand("  python3   -m  harness "),
            (std::vector<std::string>{"python3", "-m", "harness"}));
  EXPECT_TRUE(SplitCommand("").empty());
}

}  // namespace
}  // namespace convertest
