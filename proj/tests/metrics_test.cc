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

#include <cstring>
#include <random>

#include <gtest/gtest.h>

namespace convertest {
namespace {

ExecutionOutcome Outcome(bool pass, std::set<int> lines = {}) {
  ExecutionOutcome o;
  o.status = pass ? ExecStatus::kPass : ExecStatus::kFail;
  o.covered_lines = std::move(lines);
  return o;
}

TestLabel Label(bool kept, bool valid) {
  TestLabel l;
  l.predicted = kept ? Validity::kValid : Validity::kInvalid;
  l.actual = valid ? Validity::kValid : Validity::kInvalid;
  return l;
}

TEST(ValidityRate, Pooled) {
  EXPECT_DOUBLE_EQ(*ValidityRate(std::vector<int>{1, 3}, std::vector<int>{2, 3}), 0.8);
  EXPECT_DOUBLE_EQ(*ValidityRate(std::vector<int>{2, 3}, std::vector<int>{2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(*ValidityRate(std::vector<int>{0, 0}, std::vector<int>{5, 5}), 0.0);
  EXPECT_FALSE(ValidityRate(std::vector<int>{0}, std::vector<int>{0}));
  EXPECT_THROW(ValidityRate(std::vector<int>{3}, std::vector<int>{2}), PreconditionError);
}

TEST(LineCoverage, UnionThenMean) {
  std::vector<TaskCoverage> one = {{{{1, 2}, {2, 3}}, 4}};
  EXPECT_DOUBLE_EQ(*LineCoverage(one), 0.75);
  std::vector<TaskCoverage> two = {{{{1, 2}}, 2}, {{{1}}, 2}};
  EXPECT_DOUBLE_EQ(*LineCoverage(two), 0.75);
  std::vector<TaskCoverage> none = {{{}, 3}};
  EXPECT_DOUBLE_EQ(*LineCoverage(none), 0.0);
  std::vector<TaskCoverage> bad = {{{}, 0}};
  EXPECT_THROW(LineCoverage(bad), PreconditionError);
}

TEST(MutationScore, Pooled) {
  EXPECT_DOUBLE_EQ(*MutationScore(std::vector<int>{2, 3}, std::vector<int>{4, 6}), 0.5);
  EXPECT_DOUBLE_EQ(*MutationScore(std::vector<int>{4, 6}, std::vector<int>{4, 6}), 1.0);
  EXPECT_FALSE(MutationScore(std::vector<int>{0}, std::vector<int>{0}));
}

TEST(MutantKilled, NeedsRetainedTestPassingOnOriginal) {
  std::vector<ExecutionOutcome> original = {Outcome(true), Outcome(false), Outcome(true)};
  std::vector<ExecutionOutcome> mutant = {Outcome(true), Outcome(true), Outcome(false)};
  EXPECT_TRUE(MutantKilled(original, mutant, {true, true, true}));
  EXPECT_FALSE(MutantKilled(original, mutant, {true, true, false}));
  std::vector<ExecutionOutcome> flipped = {Outcome(true), Outcome(false), Outcome(true)};
  EXPECT_FALSE(MutantKilled(original, flipped, {true, true, true}));
}

TEST(Classification, Formulas) {
  std::vector<TestLabel> labels;
  for (int i = 0; i < 6; ++i) labels.push_back(Label(true, true));
  for (int i = 0; i < 2; ++i) labels.push_back(Label(true, false));
  labels.push_back(Label(false, true));
  labels.push_back(Label(false, false));
  Classification c = ClassificationScores(labels);
  EXPECT_NEAR(*c.precision, 0.75, 1e-9);
  EXPECT_NEAR(*c.recall, 6.0 / 7.0, 1e-9);
  EXPECT_NEAR(*c.f1, 0.8, 1e-9);
}

TEST(Classification, PerfectAndKeepAll) {
  std::vector<TestLabel> perfect = {Label(true, true), Label(false, false)};
  Classification c = ClassificationScores(perfect);
  EXPECT_EQ(*c.precision, 1.0);
  EXPECT_EQ(*c.recall, 1.0);
  EXPECT_EQ(*c.f1, 1.0);
  std::vector<TestLabel> all = {Label(true, true), Label(true, false), Label(true, true)};
  c = ClassificationScores(all);
  EXPECT_DOUBLE_EQ(*c.precision, 2.0 / 3.0);
  EXPECT_EQ(*c.recall, 1.0);
}

TEST(Classification, AbsentValues) {
  std::vector<TestLabel> none_kept = {Label(false, true)};
  Classification c = ClassificationScores(none_kept);
  EXPECT_FALSE(c.precision);
  EXPECT_FALSE(c.f1);
  EXPECT_EQ(*c.recall, 0.0);
  std::vector<TestLabel> none_valid = {Label(true, false)};
  EXPECT_FALSE(ClassificationScores(none_valid).recall);
  std::vector<TestLabel> missing = {TestLabel{}};
  EXPECT_THROW(ClassificationScores(missing), PreconditionError);
}

TaskEvaluation RandomTask(std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> count(0, 6);
  TaskEvaluation t;
  t.code_lines = {1, 2, 3, 4, 5};
  const int m = count(rng);
  for (int j = 0; j < m; ++j) {
    std::set<int> lines;
    for (int l = 1; l <= 6; ++l) {
      if (coin(rng)) lines.insert(l);
    }
    t.ground_truth.push_back(Outcome(coin(rng), lines));
    t.labels.push_back(Label(coin(rng), t.ground_truth.back().passed()));
  }
  const int mutants = count(rng);
  for (int k = 0; k < mutants; ++k) {
    std::vector<ExecutionOutcome> row;
    for (int j = 0; j < m; ++j) row.push_back(Outcome(coin(rng)));
    t.mutants.push_back(std::move(row));
  }
  return t;
}

TEST(Summarize, FilteredPrecisionEqualsValidityRate) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<TaskEvaluation> tasks;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) tasks.push_back(RandomTask(rng));
    SuiteMetrics post = Summarize(tasks, true);
    SuiteMetrics pre = Summarize(tasks, false);
    ASSERT_EQ(post.vr.has_value(), post.precision.has_value());
    if (post.vr) {
      ASSERT_EQ(std::memcmp(&*post.vr, &*post.precision, sizeof(double)), 0);
    }
    // Filtering keeps a subset: coverage and kills cannot grow.
    if (pre.lc && post.lc) ASSERT_LE(*post.lc, *pre.lc + 1e-12);
    ASSERT_LE(post.counts.mutants_killed, pre.counts.mutants_killed);
    ASSERT_EQ(post.counts.n_tests, pre.counts.n_tests);
    ASSERT_FALSE(pre.precision);
    ASSERT_FALSE(pre.recall);
  }
}

TEST(Summarize, CoverageCountsOnlyCodeLines) {
  TaskEvaluation t;
  t.code_lines = {2, 3};
  t.ground_truth = {Outcome(true, {1, 2})};
  t.labels = {Label(true, true)};
  std::vector<TaskEvaluation> tasks = {t};
  EXPECT_DOUBLE_EQ(*Summarize(tasks, false).lc, 0.5);
}

TEST(Summarize, SeededRelationalMutantIsKilledByBoundaryTest) {
  // is_negative(x): return x < 0, tested at the boundary x == 0; the
  // relational mutant x <= 0 fails that test.
  TaskEvaluation t;
  t.code_lines = {1, 2};
  t.ground_truth = {Outcome(true, {1, 2}), Outcome(true, {1, 2})};
  t.labels = {Label(true, true), Label(true, true)};
  t.mutants = {{Outcome(true), Outcome(false)}};
  std::vector<TaskEvaluation> tasks = {t};
  SuiteMetrics m = Summarize(tasks, true);
  EXPECT_EQ(m.counts.mutants_killed, 1);
  EXPECT_DOUBLE_EQ(*m.ms, 1.0);
  tasks[0].labels[1].predicted = Validity::kInvalid;
  EXPECT_DOUBLE_EQ(*Summarize(tasks, true).ms, 0.0);
}

}  // namespace
}  // namespace convertest
