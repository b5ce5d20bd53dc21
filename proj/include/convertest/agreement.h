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

#ifndef CONVERTEST_AGREEMENT_H_
#define CONVERTEST_AGREEMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "convertest/core.h"

namespace convertest {

// passed * sqrt(set_size). Throws PreconditionError for set_size < 1 or
// passed < 0.
double ConsensusScore(int passed, int set_size);

// Strict ranking: higher score, then higher popcount, then smaller first
// member.
bool RanksBefore(const AgreementSet& a, const AgreementSet& b);

struct Partition {
  std::vector<AgreementSet> sets;  // ranked
  std::optional<std::string> diagnostic;
};

// Groups matrix rows by identical pass vector and ranks the groups. An empty
// matrix (no rows or no columns) yields no sets and a diagnostic.
Partition PartitionCandidates(const ExecutionMatrix& matrix);

struct Selection {
  int best_row = 0;
  AgreementSet best_set;
};

// First set of a ranked list; its smallest member represents it. Throws Error
// ("no candidates survived") on an empty list.
Selection SelectBest(const std::vector<AgreementSet>& ranked);

// predicted = valid iff cell (best_row, j) passed; actual from
// ground_truth_outcomes when given (must have one entry per test).
std::vector<TestLabel> LabelTests(
    int best_row, const ExecutionMatrix& matrix,
    const std::optional<std::vector<ExecutionOutcome>>& ground_truth_outcomes);

}  // namespace convertest

#endif  // CONVERTEST_AGREEMENT_H_
