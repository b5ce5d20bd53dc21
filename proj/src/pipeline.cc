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

#include "convertest/pipeline.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "convertest/agreement.h"
#include "convertest/codegen.h"
#include "convertest/digest.h"
#include "convertest/file_util.h"
#include "convertest/generation.h"
#include "convertest/serialization.h"
#include "convertest/testgen.h"
#include "convertest/validate.h"

namespace convertest {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view ToString(ProviderMode mode) {
  switch (mode) {
    case ProviderMode::kLive: return "live";
    case ProviderMode::kReplay: return "replay";
    case ProviderMode::kMock: return "mock";
  }
  return "?";
}

ProviderMode ParseProviderMode(std::string_view s) {
  if (s == "live") return ProviderMode::kLive;
  if (s == "replay") return ProviderMode::kReplay;
  if (s == "mock") return ProviderMode::kMock;
  throw Error("unknown provider mode '" + std::string(s) + "'");
}

std::string_view ToString(Stage stage) {
  switch (stage) {
    case Stage::kGenerated: return "generated";
    case Stage::kVerified: return "verified";
    case Stage::kEvaluated: return "evaluated";
  }
  return "?";
}

namespace {

Stage ParseStage(std::string_view s) {
  if (s == "generated") return Stage::kGenerated;
  if (s == "verified") return Stage::kVerified;
  if (s == "evaluated") return Stage::kEvaluated;
  throw Error("unknown stage '" + std::string(s) + "'");
}

json PathOrNull(const std::optional<fs::path>& p) {
  return p ? json(p->string()) : json(nullptr);
}

std::optional<fs::path> OptionalPath(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return fs::path(it->get<std::string>());
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

}  // namespace

// ---- RunConfig ----

void RunConfig::Check() const {
  Require(m >= 1, "M must be at least 1");
  Require(n >= 1, "N must be at least 1");
  Require(z >= 1, "Z must be at least 1");
  Require(max_rounds >= 1, "max_rounds must be at least 1");
  Require(strategy != Strategy::kSctg || n >= 2, "SCTG requires N >= 2");
  Require(provider != ProviderMode::kReplay ||
              (cache_dir && fs::is_directory(*cache_dir)),
          "replay mode requires an existing cache directory");
  Require(provider != ProviderMode::kMock || mock_script.has_value(),
          "mock provider requires a mock script");
  Require(provider != ProviderMode::kLive || !base_url.empty(),
          "live provider requires a base URL");
  Require(executor != ExecutorMode::kSimulated || exec_fixture.has_value(),
          "simulated executor requires a fixture");
  Require(executor != ExecutorMode::kHarness || !harness.empty(),
          "harness executor requires a harness command");
  Executor().Check();
}

ExecutorConfig RunConfig::Executor() const {
  ExecutorConfig c;
  c.timeout_ms = timeout_ms;
  c.worker_count = workers;
  c.harness_path = harness;
  c.mode = executor;
  return c;
}

json RunConfig::ToJson() const {
  return {{"tasks", tasks.string()},
          {"strategy", strategy},
          {"generator", generator},
          {"m", m},
          {"n", n},
          {"z", z},
          {"max_rounds", max_rounds},
          {"per_question_answers", per_question_answers},
          {"model_id", model_id},
          {"provider", ToString(provider)},
          {"cache_dir", PathOrNull(cache_dir)},
          {"mock_script", PathOrNull(mock_script)},
          {"base_url", base_url},
          {"executor", ToString(executor)},
          {"harness", harness},
          {"exec_fixture", PathOrNull(exec_fixture)},
          {"timeout_ms", timeout_ms},
          {"workers", workers},
          {"seed", seed}};
}

RunConfig RunConfig::FromJson(const json& j) {
  RunConfig c;
  c.tasks = j.at("tasks").get<std::string>();
  j.at("strategy").get_to(c.strategy);
  j.at("generator").get_to(c.generator);
  j.at("m").get_to(c.m);
  j.at("n").get_to(c.n);
  j.at("z").get_to(c.z);
  j.at("max_rounds").get_to(c.max_rounds);
  c.per_question_answers = j.value("per_question_answers", false);
  j.at("model_id").get_to(c.model_id);
  c.provider = ParseProviderMode(j.at("provider").get<std::string>());
  c.cache_dir = OptionalPath(j, "cache_dir");
  c.mock_script = OptionalPath(j, "mock_script");
  c.base_url = j.value("base_url", std::string());
  c.executor = ParseExecutorMode(j.at("executor").get<std::string>());
  c.harness = j.value("harness", std::string());
  c.exec_fixture = OptionalPath(j, "exec_fixture");
  j.at("timeout_ms").get_to(c.timeout_ms);
  c.workers = j.value("workers", ExecutorConfig::DefaultWorkerCount());
  j.at("seed").get_to(c.seed);
  return c;
}

std::string RunConfig::Digest() const {
  json j = ToJson();
  j.erase("workers");
  return Sha256Hex(j.dump());
}

std::string RunConfig::Variant() const {
  if (strategy == Strategy::kSctg && generator == Generator::kCove) {
    return "ConVerTest";
  }
  if (strategy == Strategy::kSctg && generator == Generator::kVanilla) {
    return "w/o CoVe";
  }
  if (strategy == Strategy::kTstg && generator == Generator::kVanilla) {
    return "w/o CoVe & SC";
  }
  if (strategy == Strategy::kHtg && generator == Generator::kVanilla) {
    return "w/o CoVe & SC & TSG (full-ablation baseline)";
  }
  return std::string(ToString(strategy)) + "+" + std::string(ToString(generator));
}

// ---- task loading ----

std::vector<Task> LoadTasks(const fs::path& path, std::vector<std::string>* warnings) {
  std::istringstream in(ReadFile(path));
  std::vector<Task> tasks;
  std::string line;
  int number = 0;
  auto fail = [&](const std::string& what) {
    throw Error(path.string() + ":" + std::to_string(number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    for (const char* field : {"task_id", "description", "entry_point"}) {
      if (!j.contains(field)) fail("missing field '" + std::string(field) + "'");
      if (!j[field].is_string()) fail("field '" + std::string(field) + "' is not a string");
    }
    for (const char* field : {"signature", "setup_code", "ground_truth"}) {
      if (j.contains(field) && !j[field].is_null() && !j[field].is_string()) {
        fail("field '" + std::string(field) + "' is not a string");
      }
    }
    Task task = j.get<Task>();
    Report issues = Validate(task);
    if (!issues.empty()) fail(issues.front());
    for (const Task& other : tasks) {
      if (other.task_id == task.task_id) {
        fail("duplicate task_id '" + task.task_id + "'");
      }
    }
    tasks.push_back(std::move(task));
  }
  if (tasks.empty() && warnings) {
    warnings->push_back(path.string() + " contains no tasks");
  }
  return tasks;
}

// ---- provider stack ----

std::shared_ptr<Provider> MakeProvider(const RunConfig& config) {
  std::shared_ptr<Provider> base;
  switch (config.provider) {
    case ProviderMode::kReplay:
      if (!config.cache_dir) throw FatalError("replay mode needs --cache-dir");
      return std::make_shared<CachedProvider>(nullptr, *config.cache_dir);
    case ProviderMode::kMock: {
      if (!config.mock_script) throw FatalError("mock mode needs --mock-script");
      if (fs::is_directory(*config.mock_script)) {
        base = std::make_shared<MockProvider>(MockScript(), config.seed,
                                              *config.mock_script);
      } else {
        base = std::make_shared<MockProvider>(
            MockScript::Load(*config.mock_script), config.seed);
      }
      break;
    }
    case ProviderMode::kLive: {
      LiveConfig live;
      live.base_url = config.base_url;
      const char* key = std::getenv(kApiKeyVariable);
      if (key == nullptr || *key == '\0') {
        throw FatalError(std::string(kApiKeyVariable) + " is not set");
      }
      live.api_key = key;
      base = std::make_shared<LiveProvider>(std::move(live));
      break;
    }
  }
  if (config.cache_dir) {
    return std::make_shared<CachedProvider>(base, *config.cache_dir);
  }
  return base;
}

// ---- pipeline ----

int TaskResult::kept() const {
  return static_cast<int>(
      std::count_if(labels.begin(), labels.end(),
                    [](const TestLabel& l) { return l.kept(); }));
}

Pipeline::Pipeline(RunConfig config, std::shared_ptr<Provider> provider,
                   std::shared_ptr<convertest::Executor> executor)
    : config_(std::move(config)),
      provider_(std::move(provider)),
      executor_(std::move(executor)) {}

void Pipeline::Quarantine(TaskResult& result, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const FatalError&) {
    throw;
  } catch (const CacheMissError&) {
    throw;
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
}

TaskResult Pipeline::Generate(const Task& task) {
  TaskResult result;
  result.task_id = task.task_id;
  result.stage = Stage::kGenerated;

  auto counter = std::make_shared<CountingProvider>(provider_);
  GenerationOptions options;
  options.model_id = config_.model_id;

  TestGenerator tests(*counter, options);
  SuiteResult suite = tests.SynthesizeSuite(task, config_.strategy, config_.m,
                                            config_.n);
  result.tests = std::move(suite.tests);
  result.group_frequencies = std::move(suite.group_frequencies);
  result.diagnostics = std::move(suite.diagnostics);

  CodegenOptions codegen_options;
  codegen_options.max_rounds = config_.max_rounds;
  codegen_options.per_question_answers = config_.per_question_answers;
  CodeGenerator code(*counter, options, codegen_options);
  CandidatesResult candidates =
      code.GenerateCandidates(task, config_.z, config_.generator);
  result.candidates = std::move(candidates.candidates);
  result.diagnostics.insert(result.diagnostics.end(),
                            candidates.diagnostics.begin(),
                            candidates.diagnostics.end());
  result.requests = counter->by_template();

  if (result.tests.empty()) throw Error("no usable tests were generated");
  if (result.candidates.empty()) throw Error("no candidates survived");
  return result;
}

void Pipeline::Verify(const Task& task, TaskResult& result) {
  if (result.failed) return;
  ExecutionMatrix matrix = RunMatrix(task.task_id, result.candidates, result.tests,
                                     task.setup_code.value_or(""), *executor_,
                                     config_.Executor());
  Partition partition = PartitionCandidates(matrix);
  if (partition.diagnostic) result.diagnostics.push_back(*partition.diagnostic);
  Selection best = SelectBest(partition.sets);
  result.labels = LabelTests(best.best_row, matrix, std::nullopt);
  result.best_row = best.best_row;
  result.agreement_sets = std::move(partition.sets);
  result.matrix = std::move(matrix);
  result.stage = Stage::kVerified;
}

void Pipeline::Evaluate(const Task& task, TaskResult& result) {
  if (result.failed) return;
  result.stage = Stage::kEvaluated;
  if (!task.ground_truth) return;
  const std::string setup = task.setup_code.value_or("");
  const ExecutorConfig exec = config_.Executor();

  std::vector<ExecutionOutcome> truth =
      RunAgainstSource(*task.ground_truth, result.tests, setup, *executor_, exec);
  for (std::size_t j = 0; j < result.labels.size(); ++j) {
    result.labels[j].actual =
        truth.at(j).passed() ? Validity::kValid : Validity::kInvalid;
  }
  result.ground_truth = std::move(truth);

  MutantList mutants = RequestMutants(*task.ground_truth, *executor_);
  result.mutant_diagnostic = mutants.diagnostic;
  std::vector<ExecPayload> payloads;
  for (const Mutant& mutant : mutants.mutants) {
    for (const TestCase& test : result.tests) {
      payloads.push_back({mutant.source, setup, test.source, exec.timeout_ms});
    }
  }
  std::vector<ExecutionOutcome> flat = RunPayloads(payloads, *executor_, exec);
  result.mutants.clear();
  const std::size_t m = result.tests.size();
  for (std::size_t k = 0; k < mutants.mutants.size(); ++k) {
    MutantRun run;
    run.mutant_id = mutants.mutants[k].mutant_id;
    run.op = mutants.mutants[k].op;
    run.location = mutants.mutants[k].location;
    run.outcomes.assign(flat.begin() + static_cast<std::ptrdiff_t>(k * m),
                        flat.begin() + static_cast<std::ptrdiff_t>((k + 1) * m));
    result.mutants.push_back(std::move(run));
  }
}

std::vector<TaskResult> Pipeline::RunAll(const std::vector<Task>& tasks) {
  std::vector<TaskResult> results;
  results.reserve(tasks.size());
  for (const Task& task : tasks) {
    TaskResult result;
    result.task_id = task.task_id;
    Quarantine(result, [&] {
      result = Generate(task);
      Verify(task, result);
      Evaluate(task, result);
    });
    results.push_back(std::move(result));
  }
  return results;
}

// ---- reports ----

std::vector<TaskEvaluation> EvaluationInputs(const std::vector<Task>& tasks,
                                             const std::vector<TaskResult>& results) {
  std::vector<TaskEvaluation> out;
  for (const TaskResult& result : results) {
    if (result.failed || result.stage != Stage::kEvaluated || !result.ground_truth) {
      continue;
    }
    auto task = std::find_if(tasks.begin(), tasks.end(), [&](const Task& t) {
      return t.task_id == result.task_id;
    });
    if (task == tasks.end() || !task->ground_truth) continue;
    TaskEvaluation eval;
    eval.ground_truth = *result.ground_truth;
    for (const MutantRun& mutant : result.mutants) {
      eval.mutants.push_back(mutant.outcomes);
    }
    eval.code_lines = CodeLines(*task->ground_truth);
    eval.labels = result.labels;
    out.push_back(std::move(eval));
  }
  return out;
}

namespace {

json TaskSummary(const TaskResult& r, const std::vector<Task>& tasks) {
  json j = {{"task_id", r.task_id},
            {"stage", ToString(r.stage)},
            {"failed", r.failed},
            {"error", r.error},
            {"n_tests", r.tests.size()},
            {"n_candidates", r.candidates.size()},
            {"n_kept", r.kept()},
            {"group_frequencies", r.group_frequencies},
            {"agreement_sets", r.agreement_sets},
            {"best_row", r.best_row ? json(*r.best_row) : json(nullptr)},
            {"labels", r.labels},
            {"requests", r.requests},
            {"diagnostics", r.diagnostics}};
  std::vector<TaskEvaluation> eval = EvaluationInputs(tasks, {r});
  if (!eval.empty()) {
    j["pre_filter"] = Summarize(eval, false);
    j["post_filter"] = Summarize(eval, true);
  } else {
    j["pre_filter"] = nullptr;
    j["post_filter"] = nullptr;
  }
  return j;
}

}  // namespace

RunReport BuildReport(const RunConfig& config, const std::vector<Task>& tasks,
                      std::vector<TaskResult> results) {
  std::sort(results.begin(), results.end(),
            [](const TaskResult& a, const TaskResult& b) { return a.task_id < b.task_id; });
  RunReport report;
  report.config = config;
  report.variant = config.Variant();
  report.timestamp = UtcTimestamp();
  report.tasks = json::array();
  for (const TaskResult& r : results) {
    if (r.failed) {
      report.quarantined.push_back(r.task_id);
      report.diagnostics.push_back(r.task_id + ": quarantined: " + r.error);
    }
    for (const auto& [name, count] : r.requests) report.requests[name] += count;
    report.tasks.push_back(TaskSummary(r, tasks));
  }
  std::vector<TaskEvaluation> eval = EvaluationInputs(tasks, results);
  report.pre_filter = Summarize(eval, false);
  report.post_filter = Summarize(eval, true);
  return report;
}

json ReportToJson(const RunReport& report) {
  return {{"variant", report.variant},
          {"config", report.config.ToJson()},
          {"timestamp", report.timestamp},
          {"quarantined", report.quarantined},
          {"pre_filter", report.pre_filter},
          {"post_filter", report.post_filter},
          {"requests", report.requests},
          {"tasks", report.tasks},
          {"diagnostics", report.diagnostics}};
}

RunReport ReportFromJson(const json& j) {
  RunReport r;
  j.at("variant").get_to(r.variant);
  r.config = RunConfig::FromJson(j.at("config"));
  j.at("timestamp").get_to(r.timestamp);
  j.at("quarantined").get_to(r.quarantined);
  j.at("pre_filter").get_to(r.pre_filter);
  j.at("post_filter").get_to(r.post_filter);
  j.at("requests").get_to(r.requests);
  r.tasks = j.at("tasks");
  j.at("diagnostics").get_to(r.diagnostics);
  return r;
}

namespace {

std::string Percent(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v * 100.0);
  return buf;
}

}  // namespace

std::string RenderTable(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << "| Strategy | Codegen | #Tests | VR | LC | MS | #Kept | VR (kept) "
         "| LC (kept) | MS (kept) | P | R | F1 |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const RunReport& r : reports) {
    const SuiteMetrics& pre = r.pre_filter;
    const SuiteMetrics& post = r.post_filter;
    out << "| " << ToString(r.config.strategy) << " | "
        << ToString(r.config.generator) << " | " << pre.counts.n_tests << " | "
        << Percent(pre.vr) << " | " << Percent(pre.lc) << " | "
        << Percent(pre.ms) << " | " << post.counts.n_kept << " | "
        << Percent(post.vr) << " | " << Percent(post.lc) << " | "
        << Percent(post.ms) << " | " << Percent(post.precision) << " | "
        << Percent(post.recall) << " | " << Percent(post.f1) << " |\n";
  }
  return out.str();
}

// ---- task artifacts ----

json TaskResultToJson(const TaskResult& r) {
  json mutants = json::array();
  for (const MutantRun& m : r.mutants) {
    mutants.push_back({{"mutant_id", m.mutant_id},
                       {"operator", m.op},
                       {"location", m.location},
                       {"outcomes", m.outcomes}});
  }
  return {{"task_id", r.task_id},
          {"stage", ToString(r.stage)},
          {"failed", r.failed},
          {"error", r.error},
          {"tests", r.tests},
          {"group_frequencies", r.group_frequencies},
          {"candidates", r.candidates},
          {"requests", r.requests},
          {"matrix", r.matrix ? json(*r.matrix) : json(nullptr)},
          {"agreement_sets", r.agreement_sets},
          {"best_row", r.best_row ? json(*r.best_row) : json(nullptr)},
          {"labels", r.labels},
          {"ground_truth", r.ground_truth ? json(*r.ground_truth) : json(nullptr)},
          {"mutants", mutants},
          {"mutant_diagnostic", r.mutant_diagnostic},
          {"diagnostics", r.diagnostics}};
}

TaskResult TaskResultFromJson(const json& j) {
  TaskResult r;
  j.at("task_id").get_to(r.task_id);
  r.stage = ParseStage(j.at("stage").get<std::string>());
  j.at("failed").get_to(r.failed);
  j.at("error").get_to(r.error);
  j.at("tests").get_to(r.tests);
  j.at("group_frequencies").get_to(r.group_frequencies);
  j.at("candidates").get_to(r.candidates);
  j.at("requests").get_to(r.requests);
  if (!j.at("matrix").is_null()) r.matrix = j.at("matrix").get<ExecutionMatrix>();
  j.at("agreement_sets").get_to(r.agreement_sets);
  if (!j.at("best_row").is_null()) r.best_row = j.at("best_row").get<int>();
  j.at("labels").get_to(r.labels);
  if (!j.at("ground_truth").is_null()) {
    r.ground_truth = j.at("ground_truth").get<std::vector<ExecutionOutcome>>();
  }
  for (const json& m : j.at("mutants")) {
    r.mutants.push_back({m.at("mutant_id").get<std::string>(),
                         m.at("operator").get<std::string>(),
                         m.at("location").get<std::string>(),
                         m.at("outcomes").get<std::vector<ExecutionOutcome>>()});
  }
  j.at("mutant_diagnostic").get_to(r.mutant_diagnostic);
  j.at("diagnostics").get_to(r.diagnostics);
  return r;
}

// ---- run directory ----

namespace {

std::string ShortDigest(const RunConfig& config) {
  return config.Digest().substr(0, 12);
}

std::string SafeName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

std::string Pretty(const json& j) { return j.dump(2) + "\n"; }

json ReadJson(const fs::path& path) {
  json j = json::parse(ReadFile(path), nullptr, false);
  if (j.is_discarded()) throw Error(path.string() + " is not valid JSON");
  return j;
}

// "<timestamp>[.<k>]" -> (timestamp, k)
std::pair<std::string, int> RunOrder(const std::string& stamp) {
  const std::size_t dot = stamp.find('.');
  if (dot == std::string::npos) return {stamp, 1};
  return {stamp.substr(0, dot), std::atoi(stamp.c_str() + dot + 1)};
}

}  // namespace

RunDirectory RunDirectory::Create(const fs::path& out, const RunConfig& config) {
  const std::string stamp = CompactUtcTimestamp();
  const std::string suffix = "-" + ShortDigest(config);
  fs::path dir = out / (stamp + suffix);
  for (int k = 2; fs::exists(dir); ++k) {
    dir = out / (stamp + "." + std::to_string(k) + suffix);
  }
  fs::create_directories(dir / "tasks");
  WriteFileAtomic(dir / "config.json", Pretty(config.ToJson()));
  return RunDirectory(dir);
}

RunDirectory RunDirectory::Latest(const fs::path& out, const RunConfig& config) {
  const std::string suffix = "-" + ShortDigest(config);
  std::optional<std::pair<std::pair<std::string, int>, fs::path>> best;
  if (fs::is_directory(out)) {
    for (const fs::directory_entry& entry : fs::directory_iterator(out)) {
      const std::string name = entry.path().filename().string();
      if (!entry.is_directory() || name.size() <= suffix.size() ||
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0 ||
          !fs::exists(entry.path() / "config.json")) {
        continue;
      }
      auto order = RunOrder(name.substr(0, name.size() - suffix.size()));
      if (!best || order > best->first) best.emplace(order, entry.path());
    }
  }
  if (!best) {
    throw Error("no run directory for this configuration under " + out.string() +
                "; run 'generate' first");
  }
  return RunDirectory(best->second);
}

RunDirectory RunDirectory::Open(const fs::path& dir) {
  if (!fs::exists(dir / "config.json")) {
    throw Error(dir.string() + " is not a run directory");
  }
  return RunDirectory(dir);
}

RunConfig RunDirectory::LoadConfig() const {
  return RunConfig::FromJson(ReadJson(path_ / "config.json"));
}

void RunDirectory::SaveTask(const TaskResult& r) const {
  const fs::path dir = path_ / "tasks" / SafeName(r.task_id);
  WriteFileAtomic(dir / "result.json", Pretty(TaskResultToJson(r)));
  WriteFileAtomic(dir / "tests.json", Pretty(json(r.tests)));
  WriteFileAtomic(dir / "candidates.json", Pretty(json(r.candidates)));
  if (r.matrix) {
    WriteFileAtomic(dir / "matrix.json", Pretty(json(*r.matrix)));
    WriteFileAtomic(dir / "agreement.json", Pretty(json(r.agreement_sets)));
    WriteFileAtomic(dir / "labels.json", Pretty(json(r.labels)));
  }
}

std::vector<TaskResult> RunDirectory::LoadTasks() const {
  std::vector<TaskResult> out;
  const fs::path root = path_ / "tasks";
  if (!fs::is_directory(root)) return out;
  std::vector<fs::path> dirs;
  for (const fs::directory_entry& entry : fs::directory_iterator(root)) {
    if (fs::exists(entry.path() / "result.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& dir : dirs) {
    out.push_back(TaskResultFromJson(ReadJson(dir / "result.json")));
  }
  return out;
}

void RunDirectory::SaveReport(const RunReport& report) const {
  WriteFileAtomic(path_ / "report.json", Pretty(ReportToJson(report)));
  WriteFileAtomic(path_ / "report.md",
                  "# " + report.variant + "\n\n" + RenderTable({report}));
}

}  // namespace convertest
