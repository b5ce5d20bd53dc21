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

#include "convertest/serialization.h"

#include <string>

namespace convertest {

using nlohmann::json;

namespace {

template <typename T>
void PutOptional(json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
void GetOptional(const json& j, const char* key, std::optional<T>& value) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    value.reset();
  } else {
    value = it->template get<T>();
  }
}

}  // namespace

#define CONVERTEST_ENUM_JSON(Type, Parse)                         \
  void to_json(json& j, Type v) { j = std::string(ToString(v)); } \
  void from_json(const json& j, Type& v) { v = Parse(j.get<std::string>()); }

CONVERTEST_ENUM_JSON(Strategy, ParseStrategy)
CONVERTEST_ENUM_JSON(Generator, ParseGenerator)
CONVERTEST_ENUM_JSON(Category, ParseCategory)
CONVERTEST_ENUM_JSON(Verdict, ParseVerdict)
CONVERTEST_ENUM_JSON(ExecStatus, ParseExecStatus)
CONVERTEST_ENUM_JSON(Validity, ParseValidity)

#undef CONVERTEST_ENUM_JSON

void to_json(json& j, const Task& v) {
  j = {{"task_id", v.task_id},
       {"description", v.description},
       {"entry_point", v.entry_point},
       {"signature", v.signature}};
  PutOptional(j, "setup_code", v.setup_code);
  PutOptional(j, "ground_truth", v.ground_truth);
}

void from_json(const json& j, Task& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("description").get_to(v.description);
  j.at("entry_point").get_to(v.entry_point);
  v.signature = j.value("signature", std::string());
  GetOptional(j, "setup_code", v.setup_code);
  GetOptional(j, "ground_truth", v.ground_truth);
}

void to_json(json& j, const TestStub& v) {
  j = {{"task_id", v.task_id}, {"stub_id", v.stub_id}, {"source", v.source}};
}

void from_json(const json& j, TestStub& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("stub_id").get_to(v.stub_id);
  j.at("source").get_to(v.source);
}

void to_json(json& j, const TestCase& v) {
  j = {{"task_id", v.task_id},       {"stub_id", v.stub_id},
       {"sample_index", v.sample_index}, {"source", v.source},
       {"canonical_key", v.canonical_key}, {"strategy", v.strategy}};
}

void from_json(const json& j, TestCase& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("stub_id").get_to(v.stub_id);
  j.at("sample_index").get_to(v.sample_index);
  j.at("source").get_to(v.source);
  j.at("canonical_key").get_to(v.canonical_key);
  j.at("strategy").get_to(v.strategy);
}

void to_json(json& j, const VerificationQuestion& v) {
  j = {{"category", v.category}, {"text", v.text}};
}

void from_json(const json& j, VerificationQuestion& v) {
  j.at("category").get_to(v.category);
  j.at("text").get_to(v.text);
}

void to_json(json& j, const VerificationAnswer& v) {
  j = {{"text", v.text}, {"defect", v.defect}};
}

void from_json(const json& j, VerificationAnswer& v) {
  j.at("text").get_to(v.text);
  v.defect = j.value("defect", std::string());
}

void to_json(json& j, const VerificationRecord& v) {
  j = {{"questions", v.questions},
       {"answers", v.answers},
       {"verdict", v.verdict},
       {"iteration", v.iteration}};
}

void from_json(const json& j, VerificationRecord& v) {
  j.at("questions").get_to(v.questions);
  j.at("answers").get_to(v.answers);
  j.at("verdict").get_to(v.verdict);
  j.at("iteration").get_to(v.iteration);
}

void to_json(json& j, const CodeCandidate& v) {
  j = {{"task_id", v.task_id},       {"candidate_index", v.candidate_index},
       {"source", v.source},         {"transcript", v.transcript},
       {"generator", v.generator}};
}

void from_json(const json& j, CodeCandidate& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("candidate_index").get_to(v.candidate_index);
  j.at("source").get_to(v.source);
  v.transcript = j.value("transcript", std::vector<VerificationRecord>{});
  j.at("generator").get_to(v.generator);
}

void to_json(json& j, const ExecutionOutcome& v) {
  j = {{"status", v.status},
       {"covered_lines", v.covered_lines},
       {"wall_ms", v.wall_ms},
       {"diagnostic", v.diagnostic}};
}

void from_json(const json& j, ExecutionOutcome& v) {
  j.at("status").get_to(v.status);
  v.covered_lines = j.value("covered_lines", std::set<int>{});
  v.wall_ms = j.value("wall_ms", std::int64_t{0});
  v.diagnostic = j.value("diagnostic", std::string());
}

void to_json(json& j, const PassVector& v) { j = v.ToString(); }

void from_json(const json& j, PassVector& v) {
  v = PassVector::FromString(j.get<std::string>());
}

void to_json(json& j, const ExecutionMatrix& v) {
  j = {{"task_id", v.task_id},
       {"candidates", v.candidates},
       {"tests", v.tests},
       {"cells", v.cells}};
}

void from_json(const json& j, ExecutionMatrix& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("candidates").get_to(v.candidates);
  j.at("tests").get_to(v.tests);
  j.at("cells").get_to(v.cells);
}

void to_json(json& j, const AgreementSet& v) {
  j = {{"pass_vector", v.pass_vector},
       {"members", v.members},
       {"score", v.score}};
}

void from_json(const json& j, AgreementSet& v) {
  j.at("pass_vector").get_to(v.pass_vector);
  j.at("members").get_to(v.members);
  j.at("score").get_to(v.score);
}

void to_json(json& j, const TestLabel& v) {
  j = {{"task_id", v.task_id}, {"stub_id", v.stub_id}, {"predicted", v.predicted}};
  PutOptional(j, "actual", v.actual);
}

void from_json(const json& j, TestLabel& v) {
  j.at("task_id").get_to(v.task_id);
  j.at("stub_id").get_to(v.stub_id);
  j.at("predicted").get_to(v.predicted);
  GetOptional(j, "actual", v.actual);
}

void to_json(json& j, const MetricCounts& v) {
  j = {{"n_tasks", v.n_tasks},
       {"n_tests", v.n_tests},
       {"n_kept", v.n_kept},
       {"n_actual_valid", v.n_actual_valid},
       {"mutants_total", v.mutants_total},
       {"mutants_killed", v.mutants_killed}};
}

void from_json(const json& j, MetricCounts& v) {
  j.at("n_tasks").get_to(v.n_tasks);
  j.at("n_tests").get_to(v.n_tests);
  j.at("n_kept").get_to(v.n_kept);
  j.at("n_actual_valid").get_to(v.n_actual_valid);
  j.at("mutants_total").get_to(v.mutants_total);
  j.at("mutants_killed").get_to(v.mutants_killed);
}

void to_json(json& j, const SuiteMetrics& v) {
  j = json::object();
  PutOptional(j, "vr", v.vr);
  PutOptional(j, "lc", v.lc);
  PutOptional(j, "ms", v.ms);
  PutOptional(j, "precision", v.precision);
  PutOptional(j, "recall", v.recall);
  PutOptional(j, "f1", v.f1);
  j["counts"] = v.counts;
}

void from_json(const json& j, SuiteMetrics& v) {
  GetOptional(j, "vr", v.vr);
  GetOptional(j, "lc", v.lc);
  GetOptional(j, "ms", v.ms);
  GetOptional(j, "precision", v.precision);
  GetOptional(j, "recall", v.recall);
  GetOptional(j, "f1", v.f1);
  j.at("counts").get_to(v.counts);
}

void to_json(json& j, const Mutant& v) {
  j = {{"mutant_id", v.mutant_id},
       {"source", v.source},
       {"operator", v.op},
       {"location", v.location}};
}

void from_json(const json& j, Mutant& v) {
  j.at("mutant_id").get_to(v.mutant_id);
  j.at("source").get_to(v.source);
  v.op = j.value("operator", std::string());
  v.location = j.value("location", std::string());
}

}  // namespace convertest
