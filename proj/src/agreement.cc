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

#include "convertest/agreement.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace convertest {

double ConsensusScore(int passed, int set_size) {
  if (set_size < 1) throw PreconditionError("agreement set size must be >= 1");
  if (passed < 0) throw PreconditionError("passed count must be >= 0");
  return static_cast<double>(passed) * std::sqrt(static_cast<double>(set_size));
}

bool RanksBefore(const AgreementSet& a, const AgreementSet& b) {
  // Compare passed^2 * size exactly; equal scores such as 2*sqrt(2) and
  // 1*sqrt(8) can differ in the last bit as doubles.
  const long long pa = a.pass_vector.popcount();
  const long long pb = b.pass_vector.popcount();
  const long long sa = pa * pa * static_cast<long long>(a.members.size());
  const long long sb = pb * pb * static_cast<long long>(b.members.size());
  if (sa != sb) return sa > sb;
  if (pa != pb) return pa > pb;
  return a.members.front() < b.members.front();
}

Partition PartitionCandidates(const ExecutionMatrix& matrix) {
  Partition result;
  if (matrix.rows() == 0 || matrix.cols() == 0) {
    result.diagnostic = "empty execution matrix (" +
                        std::to_string(matrix.rows()) + " candidates x " +
                        std::to_string(matrix.cols()) + " tests)";
    return result;
  }
  std::map<PassVector, std::size_t> index;
  for (std::size_t row = 0; row < matrix.rows(); ++row) {
    PassVector vector = matrix.PassRow(row);
    auto [it, inserted] = index.try_emplace(vector, result.sets.size());
    if (inserted) result.sets.push_back(AgreementSet{std::move(vector), {}, 0.0});
    result.sets[it->second].members.push_back(static_cast<int>(row));
  }
  for (AgreementSet& set : result.sets) {
    set.score = ConsensusScore(set.pass_vector.popcount(),
                               static_cast<int>(set.members.size()));
  }
  std::sort(result.sets.begin(), result.sets.end(), RanksBefore);
  return result;
}

Selection SelectBest(const std::vector<AgreementSet>& ranked) {
  if (ranked.empty()) throw Error("no candidates survived");
  const AgreementSet& best = ranked.front();
  return Selection{*std::min_element(best.members.begin(), best.members.end()),
                   best};
}

std::vector<TestLabel> LabelTests(
    int best_row, const ExecutionMatrix& matrix,
    const std::optional<std::vector<ExecutionOutcome>>& ground_truth_outcomes) {
  if (best_row < 0 || static_cast<std::size_t>(best_row) >= matrix.rows()) {
    throw PreconditionError("best row " + std::to_string(best_row) +
                            " is not a matrix row");
  }
  if (ground_truth_outcomes && ground_truth_outcomes->size() != matrix.cols()) {
    throw PreconditionError("ground-truth outcomes do not match the test count");
  }
  std::vector<TestLabel> labels;
  labels.reserve(matrix.cols());
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    TestLabel label;
    label.task_id = matrix.task_id;
    label.stub_id = matrix.tests[j];
    label.predicted = matrix.at(static_cast<std::size_t>(best_row), j).passed()
                          ? Validity::kValid
                          : Validity::kInvalid;
    if (ground_truth_outcomes) {
      label.actual = (*ground_truth_outcomes)[j].passed() ? Validity::kValid
                                                          : Validity::kInvalid;
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace convertest
