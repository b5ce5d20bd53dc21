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

#include "convertest/validate.h"

#include <cmath>
#include <cstdio>
#include <set>

#include "convertest/agreement.h"
#include "convertest/python_lexer.h"

namespace convertest {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

Report Validate(const Task& task) {
  Report r;
  if (task.task_id.empty()) r.push_back("task_id is empty");
  if (task.entry_point.empty()) r.push_back("entry_point is empty");
  if (task.description.empty()) r.push_back("description is empty");
  if (task.ground_truth && !task.entry_point.empty() &&
      !SourceContainsIdentifier(*task.ground_truth, task.entry_point)) {
    r.push_back("entry_point '" + task.entry_point +
                "' does not appear in ground_truth");
  }
  return r;
}

Report ValidateTaskSet(std::span<const Task> tasks) {
  Report r;
  std::set<std::string> seen;
  for (const Task& task : tasks) {
    for (const std::string& issue : Validate(task)) {
      r.push_back(task.task_id + ": " + issue);
    }
    if (!seen.insert(task.task_id).second) {
      r.push_back("duplicate task_id '" + task.task_id + "'");
    }
  }
  return r;
}

Report Validate(const TestStub& stub, std::string_view entry_point) {
  Report r;
  if (stub.stub_id < 0) r.push_back("stub_id is negative");
  if (!SourceContainsCall(stub.source, entry_point)) {
    r.push_back("stub does not call " + std::string(entry_point));
  }
  if (SourceContainsAssertion(stub.source)) {
    r.push_back("stub contains an assertion");
  }
  return r;
}

Report Validate(const TestCase& test, const CanonicalizeOptions& options) {
  Report r;
  if (test.stub_id < 0) r.push_back("stub_id is negative");
  if (test.sample_index < 0) r.push_back("sample_index is negative");
  if (!SourceContainsAssertion(test.source)) {
    r.push_back("test contains no assertion");
  }
  std::optional<CanonicalForm> form = Canonicalize(test.source, options);
  if (!form) {
    r.push_back("test source does not lex");
  } else if (form->key != test.canonical_key) {
    r.push_back("canonical_key does not match the source");
  }
  return r;
}

Report Validate(const VerificationRecord& record) {
  Report r;
  if (record.answers.size() != record.questions.size()) {
    r.push_back("answers length " + std::to_string(record.answers.size()) +
                " differs from questions length " +
                std::to_string(record.questions.size()));
  }
  bool any_defect = false;
  for (const VerificationAnswer& a : record.answers) {
    any_defect = any_defect || !a.defect.empty();
  }
  if (record.verdict == Verdict::kIssuesFound && !any_defect) {
    r.push_back("verdict issues_found without a flagged defect");
  }
  if (record.iteration < 0) r.push_back("iteration is negative");
  return r;
}

Report Validate(const CodeCandidate& candidate, std::string_view entry_point) {
  Report r;
  if (candidate.candidate_index < 0) r.push_back("candidate_index is negative");
  if (!SourceDefinesFunction(candidate.source, entry_point)) {
    r.push_back("source does not define " + std::string(entry_point));
  }
  if (candidate.generator == Generator::kVanilla && !candidate.transcript.empty()) {
    r.push_back("vanilla candidate carries a transcript");
  }
  for (const VerificationRecord& record : candidate.transcript) {
    for (const std::string& issue : Validate(record)) {
      r.push_back("round " + std::to_string(record.iteration) + ": " + issue);
    }
  }
  return r;
}

Report Validate(const ExecutionOutcome& outcome,
                std::optional<std::string_view> solution) {
  Report r;
  if (outcome.passed() && !outcome.diagnostic.empty()) {
    r.push_back("pass outcome carries a diagnostic");
  }
  if (outcome.wall_ms < 0) r.push_back("wall_ms is negative");
  if (!outcome.covered_lines.empty()) {
    const int lo = *outcome.covered_lines.begin();
    const int hi = *outcome.covered_lines.rbegin();
    if (lo < 1) r.push_back("covered line " + std::to_string(lo) + " below 1");
    if (solution && hi > LineCount(*solution)) {
      r.push_back("covered line " + std::to_string(hi) +
                  " beyond the solution's " +
                  std::to_string(LineCount(*solution)) + " lines");
    }
  }
  return r;
}

Report Validate(const ExecutionMatrix& matrix) {
  Report r;
  bool shape_ok = matrix.cells.size() == matrix.rows();
  for (const auto& row : matrix.cells) {
    shape_ok = shape_ok && row.size() == matrix.cols();
  }
  if (!shape_ok) {
    r.push_back("grid dimensions do not match " + std::to_string(matrix.rows()) +
                " candidates x " + std::to_string(matrix.cols()) + " tests");
  }
  for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
    for (std::size_t j = 0; j < matrix.cells[i].size(); ++j) {
      for (const std::string& issue : Validate(matrix.cells[i][j])) {
        r.push_back("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                    "): " + issue);
      }
    }
  }
  return r;
}

Report Validate(const AgreementSet& set, const ExecutionMatrix* matrix) {
  Report r;
  if (set.members.empty()) {
    r.push_back("members is empty");
  } else {
    const double expected = ConsensusScore(set.pass_vector.popcount(),
                                           static_cast<int>(set.members.size()));
    if (!(std::fabs(set.score - expected) <= 1e-9)) {
      r.push_back("score mismatch: got " + FormatDouble(set.score) +
                  ", expected " + FormatDouble(expected));
    }
  }
  if (set.score < 0) r.push_back("score is negative");
  if (matrix) {
    for (int row : set.members) {
      if (row < 0 || static_cast<std::size_t>(row) >= matrix->rows()) {
        r.push_back("member " + std::to_string(row) + " is not a matrix row");
      } else if (matrix->PassRow(static_cast<std::size_t>(row)) != set.pass_vector) {
        r.push_back("member " + std::to_string(row) +
                    " row differs from pass_vector " + set.pass_vector.ToString());
      }
    }
  }
  return r;
}

Report ValidatePartition(std::span<const AgreementSet> sets,
                         const ExecutionMatrix& matrix) {
  Report r;
  std::vector<int> owner(matrix.rows(), -1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (const std::string& issue : Validate(sets[s], &matrix)) {
      r.push_back("set " + std::to_string(s) + ": " + issue);
    }
    for (int row : sets[s].members) {
      if (row < 0 || static_cast<std::size_t>(row) >= owner.size()) continue;
      if (owner[row] >= 0) {
        r.push_back("row " + std::to_string(row) + " appears in sets " +
                    std::to_string(owner[row]) + " and " + std::to_string(s));
      }
      owner[row] = static_cast<int>(s);
    }
  }
  for (std::size_t row = 0; row < owner.size(); ++row) {
    if (owner[row] < 0) {
      r.push_back("row " + std::to_string(row) + " is in no set");
    }
  }
  return r;
}

Report ValidateLabels(std::span<const TestLabel> labels,
                      const ExecutionMatrix& matrix, int best_row,
                      const std::optional<std::vector<ExecutionOutcome>>& ground_truth) {
  Report r;
  if (labels.size() != matrix.cols()) {
    r.push_back("label count " + std::to_string(labels.size()) +
                " differs from test count " + std::to_string(matrix.cols()));
    return r;
  }
  if (best_row < 0 || static_cast<std::size_t>(best_row) >= matrix.rows()) {
    r.push_back("best row " + std::to_string(best_row) + " is not a matrix row");
    return r;
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const TestLabel& label = labels[j];
    const std::string where = "test " + std::to_string(label.stub_id) + ": ";
    const bool passed = matrix.at(static_cast<std::size_t>(best_row), j).passed();
    if ((label.predicted == Validity::kValid) != passed) {
      r.push_back(where + "predicted disagrees with the best solution");
    }
    if (ground_truth) {
      if (ground_truth->size() != labels.size()) {
        r.push_back("ground-truth outcome count differs from label count");
        return r;
      }
      const bool valid = (*ground_truth)[j].passed();
      if (!label.actual) {
        r.push_back(where + "actual missing although ground truth exists");
      } else if ((*label.actual == Validity::kValid) != valid) {
        r.push_back(where + "actual disagrees with the ground-truth run");
      }
    } else if (label.actual) {
      r.push_back(where + "actual present without ground truth");
    }
  }
  return r;
}

}  // namespace convertest
