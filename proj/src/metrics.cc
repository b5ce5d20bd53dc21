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

#include "convertest/metrics.h"

#include <numeric>

namespace convertest {
namespace {

std::optional<double> Ratio(long long numerator, long long denominator) {
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

std::optional<double> ValidityRate(std::span<const int> valid,
                                   std::span<const int> tests) {
  if (valid.size() != tests.size()) {
    throw PreconditionError("validity rate needs one count pair per task");
  }
  long long v = 0;
  long long m = 0;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (valid[i] < 0 || valid[i] > tests[i]) {
      throw PreconditionError("validity rate needs 0 <= valid <= tests");
    }
    v += valid[i];
    m += tests[i];
  }
  return Ratio(v, m);
}

std::optional<double> LineCoverage(std::span<const TaskCoverage> tasks) {
  if (tasks.empty()) return std::nullopt;
  double sum = 0.0;
  for (const TaskCoverage& task : tasks) {
    if (task.total_lines < 1) {
      throw PreconditionError("line coverage needs total_lines >= 1");
    }
    std::set<int> lines;
    for (const auto& covered : task.covered_per_test) {
      lines.insert(covered.begin(), covered.end());
    }
    sum += static_cast<double>(lines.size()) / task.total_lines;
  }
  return sum / static_cast<double>(tasks.size());
}

std::optional<double> MutationScore(std::span<const int> killed,
                                    std::span<const int> mutants) {
  if (killed.size() != mutants.size()) {
    throw PreconditionError("mutation score needs one count pair per task");
  }
  return Ratio(std::accumulate(killed.begin(), killed.end(), 0LL),
               std::accumulate(mutants.begin(), mutants.end(), 0LL));
}

bool MutantKilled(std::span<const ExecutionOutcome> original,
                  std::span<const ExecutionOutcome> mutant,
                  const std::vector<bool>& retained) {
  for (std::size_t j = 0; j < original.size(); ++j) {
    if (retained[j] && original[j].passed() && !mutant[j].passed()) return true;
  }
  return false;
}

double F1Score(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

Classification ClassificationScores(std::span<const TestLabel> labels) {
  long long kept = 0;
  long long kept_valid = 0;
  long long valid = 0;
  for (const TestLabel& label : labels) {
    if (!label.actual) {
      throw PreconditionError("classification needs ground-truth labels");
    }
    const bool is_valid = *label.actual == Validity::kValid;
    kept += label.kept();
    valid += is_valid;
    kept_valid += label.kept() && is_valid;
  }
  Classification c;
  c.precision = Ratio(kept_valid, kept);
  c.recall = Ratio(kept_valid, valid);
  if (c.precision && c.recall) c.f1 = F1Score(*c.precision, *c.recall);
  return c;
}

SuiteMetrics Summarize(std::span<const TaskEvaluation> tasks, bool filtered) {
  SuiteMetrics metrics;
  std::vector<int> valid_counts;
  std::vector<int> test_counts;
  std::vector<int> killed_counts;
  std::vector<int> mutant_counts;
  std::vector<TaskCoverage> coverage;
  std::vector<TestLabel> labels;
  for (const TaskEvaluation& task : tasks) {
    const std::size_t m = task.ground_truth.size();
    std::vector<bool> retained(m, true);
    if (filtered) {
      for (std::size_t j = 0; j < m; ++j) retained[j] = task.labels.at(j).kept();
    }

    int v = 0;
    int n = 0;
    TaskCoverage cov;
    cov.total_lines = std::max<int>(1, static_cast<int>(task.code_lines.size()));
    for (std::size_t j = 0; j < m; ++j) {
      if (!retained[j]) continue;
      ++n;
      v += task.ground_truth[j].passed();
      std::set<int> lines;
      for (int line : task.ground_truth[j].covered_lines) {
        if (task.code_lines.count(line) > 0) lines.insert(line);
      }
      cov.covered_per_test.push_back(std::move(lines));
    }
    int killed = 0;
    for (const auto& mutant : task.mutants) {
      killed += MutantKilled(task.ground_truth, mutant, retained);
    }
    valid_counts.push_back(v);
    test_counts.push_back(n);
    killed_counts.push_back(killed);
    mutant_counts.push_back(static_cast<int>(task.mutants.size()));
    coverage.push_back(std::move(cov));
    labels.insert(labels.end(), task.labels.begin(), task.labels.end());

    metrics.counts.n_tests += static_cast<int>(m);
    metrics.counts.n_kept += n;
    for (const ExecutionOutcome& o : task.ground_truth) {
      metrics.counts.n_actual_valid += o.passed();
    }
    metrics.counts.mutants_total += static_cast<int>(task.mutants.size());
    metrics.counts.mutants_killed += killed;
  }
  metrics.counts.n_tasks = static_cast<int>(tasks.size());
  metrics.vr = ValidityRate(valid_counts, test_counts);
  metrics.lc = LineCoverage(coverage);
  metrics.ms = MutationScore(killed_counts, mutant_counts);
  if (filtered) {
    Classification c = ClassificationScores(labels);
    metrics.precision = c.precision;
    metrics.recall = c.recall;
    metrics.f1 = c.f1;
  }
  return metrics;
}

}  // namespace convertest
