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

#ifndef CONVERTEST_PIPELINE_H_
#define CONVERTEST_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convertest/core.h"
#include "convertest/executor.h"
#include "convertest/metrics.h"
#include "convertest/provider.h"
#include "json.hpp"

namespace convertest {

enum class ProviderMode { kLive, kReplay, kMock };

std::string_view ToString(ProviderMode mode);
ProviderMode ParseProviderMode(std::string_view s);

struct RunConfig {
  std::filesystem::path tasks;
  Strategy strategy = Strategy::kSctg;
  Generator generator = Generator::kCove;
  int m = 10;
  int n = 5;
  int z = 5;
  int max_rounds = 3;
  bool per_question_answers = false;
  std::string model_id = "mock";
  ProviderMode provider = ProviderMode::kMock;
  std::optional<std::filesystem::path> cache_dir;
  // Mock script file, or a directory of <cache key>.txt responses.
  std::optional<std::filesystem::path> mock_script;
  std::string base_url;
  ExecutorMode executor = ExecutorMode::kHarness;
  std::string harness;
  std::optional<std::filesystem::path> exec_fixture;
  int timeout_ms = 10000;
  int workers = ExecutorConfig::DefaultWorkerCount();
  std::uint64_t seed = 0;

  // Throws PreconditionError describing the first violated constraint.
  void Check() const;
  ExecutorConfig Executor() const;
  nlohmann::json ToJson() const;
  static RunConfig FromJson(const nlohmann::json& j);
  // SHA-256 of ToJson() without "workers", which never changes results.
  std::string Digest() const;
  // Ablation name of (strategy, generator).
  std::string Variant() const;

  bool operator==(const RunConfig&) const = default;
};

// One JSON object per line. Blank lines are skipped. Throws Error listing the
// line number and offending field; an empty file yields no tasks and a
// warning in `warnings`.
std::vector<Task> LoadTasks(const std::filesystem::path& path,
                            std::vector<std::string>* warnings = nullptr);

enum class Stage { kGenerated, kVerified, kEvaluated };
std::string_view ToString(Stage stage);

struct MutantRun {
  std::string mutant_id;
  std::string op;
  std::string location;
  std::vector<ExecutionOutcome> outcomes;  // per test
};

// Everything the pipeline produced for one task.
struct TaskResult {
  std::string task_id;
  Stage stage = Stage::kGenerated;
  bool failed = false;
  std::string error;

  std::vector<TestCase> tests;
  std::vector<std::vector<int>> group_frequencies;
  std::vector<CodeCandidate> candidates;
  std::map<std::string, int> requests;

  std::optional<ExecutionMatrix> matrix;
  std::vector<AgreementSet> agreement_sets;
  std::optional<int> best_row;
  std::vector<TestLabel> labels;

  std::optional<std::vector<ExecutionOutcome>> ground_truth;
  std::vector<MutantRun> mutants;
  std::string mutant_diagnostic;

  std::vector<std::string> diagnostics;

  int kept() const;
};

struct RunReport {
  RunConfig config;
  std::string variant;
  // Kept apart from everything else so reports compare byte-for-byte.
  std::string timestamp;
  std::vector<std::string> quarantined;
  SuiteMetrics pre_filter;
  SuiteMetrics post_filter;
  std::map<std::string, int> requests;
  nlohmann::json tasks;  // per-task summaries
  std::vector<std::string> diagnostics;
};

// Builds the provider stack for `config` (mock or live, behind the cache
// when a cache directory is set; replay is cache-only).
std::shared_ptr<Provider> MakeProvider(const RunConfig& config);

class Pipeline {
 public:
  Pipeline(RunConfig config, std::shared_ptr<Provider> provider,
           std::shared_ptr<Executor> executor);

  // Test suite and candidates.
  TaskResult Generate(const Task& task);
  // Execution matrix, agreement sets, labels.
  void Verify(const Task& task, TaskResult& result);
  // Ground-truth outcomes and mutant runs; no-op without a ground truth.
  void Evaluate(const Task& task, TaskResult& result);

  // All stages for every task. Failing tasks are quarantined unless the
  // failure is a FatalError or a replay cache miss, which propagate.
  std::vector<TaskResult> RunAll(const std::vector<Task>& tasks);

  const RunConfig& config() const { return config_; }

  // Runs `fn`, marking `result` failed on an ordinary error.
  static void Quarantine(TaskResult& result, const std::function<void()>& fn);

 private:
  RunConfig config_;
  std::shared_ptr<Provider> provider_;
  std::shared_ptr<Executor> executor_;
};

// Per-task evaluation inputs (tasks that reached evaluation with a ground
// truth only).
std::vector<TaskEvaluation> EvaluationInputs(const std::vector<Task>& tasks,
                                             const std::vector<TaskResult>& results);

RunReport BuildReport(const RunConfig& config, const std::vector<Task>& tasks,
                      std::vector<TaskResult> results);

nlohmann::json ReportToJson(const RunReport& report);
RunReport ReportFromJson(const nlohmann::json& j);

// One row per report: Strategy, Codegen, #Tests, VR, LC, MS, #Kept, then the
// filtered VR, LC, MS, P, R, F1. Percentages; absent values render as "-".
std::string RenderTable(const std::vector<RunReport>& reports);

nlohmann::json TaskResultToJson(const TaskResult& result);
TaskResult TaskResultFromJson(const nlohmann::json& j);

// `<out>/<timestamp>-<digest>/` holding config.json, tasks/<id>/*.json,
// report.json and report.md.
class RunDirectory {
 public:
  static RunDirectory Create(const std::filesystem::path& out,
                             const RunConfig& config);
  // Most recent run directory under `out` for the config's digest. Throws
  // Error when there is none.
  static RunDirectory Latest(const std::filesystem::path& out,
                             const RunConfig& config);
  static RunDirectory Open(const std::filesystem::path& dir);

  const std::filesystem::path& path() const { return path_; }
  RunConfig LoadConfig() const;

  void SaveTask(const TaskResult& result) const;
  std::vector<TaskResult> LoadTasks() const;
  void SaveReport(const RunReport& report) const;

 private:
  explicit RunDirectory(std::filesystem::path path) : path_(std::move(path)) {}
  std::filesystem::path path_;
};

}  // namespace convertest

#endif  // CONVERTEST_PIPELINE_H_
