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

// JSON forms of the domain types. Field names follow the struct members;
// enums use their ToString spelling; absent optionals are written as null
// and read back from null or a missing field.

#ifndef CONVERTEST_SERIALIZATION_H_
#define CONVERTEST_SERIALIZATION_H_

#include "convertest/core.h"
#include "convertest/executor.h"
#include "convertest/metrics.h"
#include "json.hpp"

namespace convertest {

void to_json(nlohmann::json& j, Strategy v);
void from_json(const nlohmann::json& j, Strategy& v);
void to_json(nlohmann::json& j, Generator v);
void from_json(const nlohmann::json& j, Generator& v);
void to_json(nlohmann::json& j, Category v);
void from_json(const nlohmann::json& j, Category& v);
void to_json(nlohmann::json& j, Verdict v);
void from_json(const nlohmann::json& j, Verdict& v);
void to_json(nlohmann::json& j, ExecStatus v);
void from_json(const nlohmann::json& j, ExecStatus& v);
void to_json(nlohmann::json& j, Validity v);
void from_json(const nlohmann::json& j, Validity& v);

void to_json(nlohmann::json& j, const Task& v);
void from_json(const nlohmann::json& j, Task& v);
void to_json(nlohmann::json& j, const TestStub& v);
void from_json(const nlohmann::json& j, TestStub& v);
void to_json(nlohmann::json& j, const TestCase& v);
void from_json(const nlohmann::json& j, TestCase& v);
void to_json(nlohmann::json& j, const VerificationQuestion& v);
void from_json(const nlohmann::json& j, VerificationQuestion& v);
void to_json(nlohmann::json& j, const VerificationAnswer& v);
void from_json(const nlohmann::json& j, VerificationAnswer& v);
void to_json(nlohmann::json& j, const VerificationRecord& v);
void from_json(const nlohmann::json& j, VerificationRecord& v);
void to_json(nlohmann::json& j, const CodeCandidate& v);
void from_json(const nlohmann::json& j, CodeCandidate& v);
void to_json(nlohmann::json& j, const ExecutionOutcome& v);
void from_json(const nlohmann::json& j, ExecutionOutcome& v);
// A 0/1 string.
void to_json(nlohmann::json& j, const PassVector& v);
void from_json(const nlohmann::json& j, PassVector& v);
void to_json(nlohmann::json& j, const ExecutionMatrix& v);
void from_json(const nlohmann::json& j, ExecutionMatrix& v);
void to_json(nlohmann::json& j, const AgreementSet& v);
void from_json(const nlohmann::json& j, AgreementSet& v);
void to_json(nlohmann::json& j, const TestLabel& v);
void from_json(const nlohmann::json& j, TestLabel& v);

void to_json(nlohmann::json& j, const MetricCounts& v);
void from_json(const nlohmann::json& j, MetricCounts& v);
void to_json(nlohmann::json& j, const SuiteMetrics& v);
void from_json(const nlohmann::json& j, SuiteMetrics& v);
void to_json(nlohmann::json& j, const Mutant& v);
void from_json(const nlohmann::json& j, Mutant& v);

}  // namespace convertest

#endif  // CONVERTEST_SERIALIZATION_H_
