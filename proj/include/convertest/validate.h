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

// Invariant checks for the domain types. Each returns one message per
// violated invariant and never throws; an empty report means the value is
// well-formed.

#ifndef CONVERTEST_VALIDATE_H_
#define CONVERTEST_VALIDATE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convertest/canonical.h"
#include "convertest/core.h"

namespace convertest {

using Report = std::vector<std::string>;

Report Validate(const Task& task);
// Also checks task_id uniqueness.
Report ValidateTaskSet(std::span<const Task> tasks);
Report Validate(const TestStub& stub, std::string_view entry_point);
// The key is recomputed from the source under `options`.
Report Validate(const TestCase& test, const CanonicalizeOptions& options);
Report Validate(const VerificationRecord& record);
Report Validate(const CodeCandidate& candidate, std::string_view entry_point);
// Pass `solution` to bound covered_lines by its line count.
Report Validate(const ExecutionOutcome& outcome,
                std::optional<std::string_view> solution = std::nullopt);
Report Validate(const ExecutionMatrix& matrix);
// With `matrix`, also checks each member's row against the pass vector.
Report Validate(const AgreementSet& set, const ExecutionMatrix* matrix = nullptr);
// Sets of one matrix: every set valid, pairwise disjoint, covering all rows.
Report ValidatePartition(std::span<const AgreementSet> sets,
                         const ExecutionMatrix& matrix);
// Labels for `matrix` columns in order, against the selected row and the
// optional ground-truth outcomes.
Report ValidateLabels(std::span<const TestLabel> labels,
                      const ExecutionMatrix& matrix, int best_row,
                      const std::optional<std::vector<ExecutionOutcome>>& ground_truth);

}  // namespace convertest

#endif  // CONVERTEST_VALIDATE_H_
