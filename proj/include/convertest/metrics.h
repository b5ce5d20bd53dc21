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

#ifndef CONVERTEST_METRICS_H_
#define CONVERTEST_METRICS_H_

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "convertest/core.h"

namespace convertest {

struct MetricCounts {
  int n_tasks = 0;
  int n_tests = 0;
  int n_kept = 0;
  int n_actual_valid = 0;
  int mutants_total = 0;
  int mutants_killed = 0;

  bool operator==(const MetricCounts&) const = default;
};

// Absent values are undefined ratios (empty denominators).
struct SuiteMetrics {
  std::optional<double> vr;
  std::optional<double> lc;
  std::optional<double> ms;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  MetricCounts counts;

  bool operator==(const SuiteMetrics&) const = default;
};

// Pooled sum(valid) / sum(tests); absent when there are no tests.
std::optional<double> ValidityRate(std::span<const int> valid,
                                   std::span<const int> tests);

struct TaskCoverage {
  std::vector<std::set<int>> covered_per_test;
  int total_lines = 1;
};

// Mean over tasks of |union of covered lines| / total_lines. A task without
// tests contributes 0. Absent when there are no tasks.
std::optional<double> LineCoverage(std::span<const TaskCoverage> tasks);

// Pooled sum(killed) / sum(mutants); absent when there are no mutants.
std::optional<double> MutationScore(std::span<const int> killed,
                                    std::span<const int> mutants);

// A mutant is killed iff some retained test passes on the original and does
// not pass on the mutant.
bool MutantKilled(std::span<const ExecutionOutcome> original,
                  std::span<const ExecutionOutcome> mutant,
                  const std::vector<bool>& retained);

struct Classification {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

// Kept = predicted valid. Every label must carry `actual`.
Classification ClassificationScores(std::span<const TestLabel> labels);

// 2PR/(P+R), or 0 when P+R = 0.
double F1Score(double precision, double recall);

// Per-task evaluation inputs, aligned with the task's test list.
struct TaskEvaluation {
  std::vector<ExecutionOutcome> ground_truth;
  std::vector<std::vector<ExecutionOutcome>> mutants;  // [mutant][test]
  std::set<int> code_lines;
  std::vector<TestLabel> labels;
};

// Metrics over every generated test (unfiltered) or over the kept tests.
// Classification scores are only reported for the filtered suite; there the
// validity rate and precision come from the same counts and are identical.
SuiteMetrics Summarize(std::span<const TaskEvaluation> tasks, bool filtered);

}  // namespace convertest

#endif  // CONVERTEST_METRICS_H_
