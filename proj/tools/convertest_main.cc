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

// convertest: command-line driver for the test generation and verification
// pipeline.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "convertest/file_util.h"
#include "convertest/pipeline.h"

namespace fs = std::filesystem;
using namespace convertest;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitQuarantined = 2;

struct Flags {
  std::string tasks;
  std::string strategy = "SCTG";
  std::string codegen = "cove";
  int m = 10;
  int n = 5;
  int z = 5;
  int max_rounds = 3;
  bool per_question = false;
  std::string model = "mock";
  std::string provider = "mock";
  std::string cache_dir;
  std::string mock_script;
  std::string base_url;
  std::string executor = "harness";
  std::string harness;
  std::string exec_fixture;
  int timeout_ms = 10000;
  int workers = ExecutorConfig::DefaultWorkerCount();
  std::string out = "runs";
  std::string run_dir;
  std::uint64_t seed = 0;
};

void AddFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tasks", f.tasks, "Task file (JSON lines)");
  cmd->add_option("--strategy", f.strategy, "HTG, TSTG or SCTG")->capture_default_str();
  cmd->add_option("--codegen", f.codegen, "vanilla or cove")->capture_default_str();
  cmd->add_option("--m", f.m, "Tests per task")->capture_default_str();
  cmd->add_option("--n", f.n, "Completions per stub")->capture_default_str();
  cmd->add_option("--z", f.z, "Candidate solutions per task")->capture_default_str();
  cmd->add_option("--max-rounds", f.max_rounds, "Verification rounds")->capture_default_str();
  cmd->add_flag("--per-question", f.per_question,
                "Answer each verification question in its own request");
  cmd->add_option("--model", f.model, "Model id")->capture_default_str();
  cmd->add_option("--provider", f.provider, "live, replay or mock")->capture_default_str();
  cmd->add_option("--cache-dir", f.cache_dir, "Response cache directory");
  cmd->add_option("--mock-script", f.mock_script,
                  "Mock script file or directory of <key>.txt responses");
  cmd->add_option("--base-url", f.base_url, "Chat-completion endpoint base URL");
  cmd->add_option("--executor", f.executor, "harness or simulated")->capture_default_str();
  cmd->add_option("--harness", f.harness, "Harness server command line");
  cmd->add_option("--exec-fixture", f.exec_fixture, "Simulated executor fixture");
  cmd->add_option("--timeout-ms", f.timeout_ms, "Per-pair timeout")->capture_default_str();
  cmd->add_option("--workers", f.workers, "Parallel executions")->capture_default_str();
  cmd->add_option("--out", f.out, "Run output root")->capture_default_str();
  cmd->add_option("--run-dir", f.run_dir,
                  "Run directory to continue (default: latest matching run)");
  cmd->add_option("--seed", f.seed, "Mock selection seed")->capture_default_str();
}

std::optional<fs::path> OptionalPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

RunConfig ConfigFromFlags(const Flags& f) {
  RunConfig c;
  c.tasks = f.tasks;
  c.strategy = ParseStrategy(f.strategy);
  c.generator = ParseGenerator(f.codegen);
  c.m = f.m;
  c.n = f.n;
  c.z = f.z;
  c.max_rounds = f.max_rounds;
  c.per_question_answers = f.per_question;
  c.model_id = f.model;
  c.provider = ParseProviderMode(f.provider);
  c.cache_dir = OptionalPath(f.cache_dir);
  c.mock_script = OptionalPath(f.mock_script);
  c.base_url = f.base_url;
  c.executor = ParseExecutorMode(f.executor);
  c.harness = f.harness;
  c.exec_fixture = OptionalPath(f.exec_fixture);
  c.timeout_ms = f.timeout_ms;
  c.workers = f.workers;
  c.seed = f.seed;
  return c;
}

std::vector<Task> Tasks(const RunConfig& config) {
  std::vector<std::string> warnings;
  std::vector<Task> tasks = LoadTasks(config.tasks, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return tasks;
}

const Task* FindTask(const std::vector<Task>& tasks, const std::string& id) {
  for (const Task& t : tasks) {
    if (t.task_id == id) return &t;
  }
  return nullptr;
}

int ExitFor(const std::vector<TaskResult>& results) {
  for (const TaskResult& r : results) {
    if (r.failed) return kExitQuarantined;
  }
  return kExitOk;
}

void Log(const TaskResult& r) {
  std::cerr << r.task_id << ": ";
  if (r.failed) {
    std::cerr << "quarantined (" << r.error << ")\n";
    return;
  }
  std::cerr << ToString(r.stage) << ", " << r.tests.size() << " tests, "
            << r.candidates.size() << " candidates";
  if (r.matrix) std::cerr << ", " << r.kept() << " kept";
  std::cerr << "\n";
}

// Reopens the run a later stage continues from. Only the worker count may
// differ from the stored configuration.
RunDirectory Locate(const Flags& f, RunConfig& config) {
  RunDirectory dir = f.run_dir.empty()
                         ? RunDirectory::Latest(f.out, ConfigFromFlags(f))
                         : RunDirectory::Open(f.run_dir);
  config = dir.LoadConfig();
  config.workers = f.workers;
  return dir;
}

int Generate(const Flags& f) {
  RunConfig config = ConfigFromFlags(f);
  config.Check();
  std::vector<Task> tasks = Tasks(config);
  Pipeline pipeline(config, MakeProvider(config), nullptr);
  RunDirectory dir = RunDirectory::Create(f.out, config);
  std::vector<TaskResult> results;
  for (const Task& task : tasks) {
    TaskResult r;
    r.task_id = task.task_id;
    Pipeline::Quarantine(r, [&] { r = pipeline.Generate(task); });
    Log(r);
    dir.SaveTask(r);
    results.push_back(std::move(r));
  }
  std::cout << dir.path().string() << "\n";
  return ExitFor(results);
}

template <typename StageFn>
int ContinueRun(const Flags& f, StageFn stage) {
  RunConfig config;
  RunDirectory dir = Locate(f, config);
  config.Executor().Check();
  std::vector<Task> tasks = Tasks(config);
  Pipeline pipeline(config, nullptr, MakeExecutor(config.Executor(), config.exec_fixture));
  std::vector<TaskResult> results = dir.LoadTasks();
  for (TaskResult& r : results) {
    const Task* task = FindTask(tasks, r.task_id);
    Pipeline::Quarantine(r, [&] {
      if (task == nullptr) throw Error("task no longer in " + config.tasks.string());
      stage(pipeline, *task, r);
    });
    Log(r);
    dir.SaveTask(r);
  }
  std::cout << dir.path().string() << "\n";
  return ExitFor(results);
}

int Verify(const Flags& f) {
  return ContinueRun(f, [](Pipeline& p, const Task& task, TaskResult& r) {
    p.Verify(task, r);
  });
}

int Evaluate(const Flags& f) {
  return ContinueRun(f, [](Pipeline& p, const Task& task, TaskResult& r) {
    if (!r.failed && r.stage == Stage::kGenerated) {
      throw Error("not verified yet; run 'verify' first");
    }
    p.Evaluate(task, r);
  });
}

int Report(const Flags& f) {
  RunConfig config;
  RunDirectory dir = Locate(f, config);
  std::vector<TaskResult> results = dir.LoadTasks();
  RunReport report = BuildReport(config, Tasks(config), results);
  dir.SaveReport(report);
  std::cout << RenderTable({report});
  std::cerr << (dir.path() / "report.json").string() << "\n";
  return report.quarantined.empty() ? kExitOk : kExitQuarantined;
}

RunReport RunComplete(const RunConfig& config, const fs::path& out, int& exit_code) {
  config.Check();
  std::vector<Task> tasks = Tasks(config);
  Pipeline pipeline(config, MakeProvider(config),
                    MakeExecutor(config.Executor(), config.exec_fixture));
  RunDirectory dir = RunDirectory::Create(out, config);
  std::vector<TaskResult> results = pipeline.RunAll(tasks);
  for (const TaskResult& r : results) {
    Log(r);
    dir.SaveTask(r);
  }
  RunReport report = BuildReport(config, tasks, results);
  dir.SaveReport(report);
  std::cerr << dir.path().string() << "\n";
  if (!report.quarantined.empty()) exit_code = kExitQuarantined;
  return report;
}

int Run(const Flags& f) {
  int exit_code = kExitOk;
  RunReport report = RunComplete(ConfigFromFlags(f), f.out, exit_code);
  std::cout << RenderTable({report});
  return exit_code;
}

int Ablate(const Flags& f) {
  const RunConfig base = ConfigFromFlags(f);
  const std::pair<Strategy, Generator> lattice[] = {
      {Strategy::kSctg, Generator::kCove},
      {Strategy::kSctg, Generator::kVanilla},
      {Strategy::kTstg, Generator::kVanilla},
      {Strategy::kHtg, Generator::kVanilla}};
  int exit_code = kExitOk;
  std::vector<RunReport> reports;
  for (const auto& [strategy, generator] : lattice) {
    RunConfig config = base;
    config.strategy = strategy;
    config.generator = generator;
    std::cerr << "== " << config.Variant() << "\n";
    reports.push_back(RunComplete(config, f.out, exit_code));
  }
  const std::string table = RenderTable(reports);
  WriteFileAtomic(fs::path(f.out) / ("ablation-" + base.Digest().substr(0, 12) + ".md"),
                  table);
  std::cout << table;
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test generation and consensus verification from task descriptions"};
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Flags&);
  };
  const Command commands[] = {
      {"generate", "Generate test suites and candidate solutions", Generate},
      {"verify", "Execute candidates against tests and label the tests", Verify},
      {"evaluate", "Run tests on ground truth and mutants", Evaluate},
      {"report", "Write report.json and report.md for a run", Report},
      {"run", "All stages in one go", Run},
      {"ablate", "Run the four strategy/codegen variants", Ablate},
  };
  int (*selected)(const Flags&) = nullptr;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    AddFlags(sub, flags);
    sub->callback([&selected, fn = c.fn] { selected = fn; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }
  try {
    return selected(flags);
  } catch (const std::exception& e) {
    std::cerr << "convertest: " << e.what() << "\n";
    return kExitFatal;
  }
}
