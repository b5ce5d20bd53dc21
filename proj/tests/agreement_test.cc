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

#include <gtest/gtest.h>

#include "test_util.h"

namespace convertest {
namespace {

using testing::MatrixFromBits;

TEST(ConsensusScore, Formula) {
  EXPECT_NEAR(ConsensusScore(4, 3), 6.92820323, 1e-8);
  EXPECT_EQ(ConsensusScore(0, 5), 0.0);
  EXPECT_EQ(ConsensusScore(3, 1), 3.0);
  EXPECT_THROW(ConsensusScore(1, 0), PreconditionError);
}

TEST(Partition, GroupsEqualRows) {
  Partition p = PartitionCandidates(MatrixFromBits({"101", "101", "011"}));
  ASSERT_EQ(p.sets.size(), 2u);
  EXPECT_EQ(p.sets[0].members, (std::vector<int>{0, 1}));
  EXPECT_EQ(p.sets[0].pass_vector.ToString(), "101");
  EXPECT_NEAR(p.sets[0].score, 2 * std::sqrt(2.0), 1e-12);
  EXPECT_EQ(p.sets[1].members, (std::vector<int>{2}));
  EXPECT_EQ(p.sets[1].pass_vector.ToString(), "011");
  EXPECT_FALSE(p.diagnostic);
}

TEST(Partition, IdenticalRowsFormOneSet) {
  Partition p = PartitionCandidates(MatrixFromBits({"110", "110", "110", "110"}));
  ASSERT_EQ(p.sets.size(), 1u);
  EXPECT_EQ(p.sets[0].members.size(), 4u);
}

TEST(Partition, NonPassStatusesAreEquivalent) {
  ExecutionMatrix m = MatrixFromBits({"10", "10"});
  m.cells[0][1].status = ExecStatus::kTimeout;
  m.cells[1][1].status = ExecStatus::kError;
  EXPECT_EQ(PartitionCandidates(m).sets.size(), 1u);
}

TEST(Partition, EmptyMatrixIsDiagnosed) {
  Partition p = PartitionCandidates(MatrixFromBits({}));
  EXPECT_TRUE(p.sets.empty());
  ASSERT_TRUE(p.diagnostic);
  EXPECT_THROW(SelectBest(p.sets), Error);
  ExecutionMatrix no_tests = MatrixFromBits({"", ""});
  EXPECT_TRUE(PartitionCandidates(no_tests).sets.empty());
}

TEST(Partition, MatchesBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(20260101);
  for (int iter = 0; iter < 300; ++iter) {
    ExecutionMatrix m = testing::RandomMatrix(rng, 6, 8);
    Partition p = PartitionCandidates(m);
    Selection best = SelectBest(p.sets);
    ASSERT_EQ(testing::CheckAgainstBruteForce(m, p.sets, best.best_row), "") << iter;
  }
}

TEST(SelectBest, SingleSetPicksSmallestMember) {
  Partition p = PartitionCandidates(MatrixFromBits({"11", "11"}));
  EXPECT_EQ(SelectBest(p.sets).best_row, 0);
}

TEST(SelectBest, HigherScoreWins) {
  // {0,1,2,3} with two passes: 4.0; {4} with three passes: 3.0.
  Partition p = PartitionCandidates(MatrixFromBits({"1100", "1100", "1100", "1100", "1110"}));
  Selection s = SelectBest(p.sets);
  EXPECT_EQ(s.best_row, 0);
  EXPECT_DOUBLE_EQ(s.best_set.score, 4.0);
  // {0} scores 6.0 against 5.0 for {1}.
  p = PartitionCandidates(MatrixFromBits({"111111", "111110"}));
  EXPECT_EQ(SelectBest(p.sets).best_row, 0);
}

TEST(SelectBest, ScoreTieGoesToHigherPopcount) {
  // (passed 4, size 1) = 4.0 ties (passed 2, size 4) = 4.0.
  Partition p = PartitionCandidates(
      MatrixFromBits({"1100", "1100", "1100", "1100", "1111"}));
  ASSERT_EQ(p.sets.size(), 2u);
  EXPECT_DOUBLE_EQ(p.sets[0].score, p.sets[1].score);
  Selection s = SelectBest(p.sets);
  EXPECT_EQ(s.best_row, 4);
  EXPECT_EQ(s.best_set.pass_vector.popcount(), 4);
}

TEST(SelectBest, IrrationalTieIsExact) {
  // 2 * sqrt(2) and 1 * sqrt(8) are equal; popcount 2 wins.
  std::vector<std::string> rows(8, "1000");
  rows.push_back("0110");
  rows.push_back("0110");
  Partition p = PartitionCandidates(MatrixFromBits(rows));
  EXPECT_EQ(SelectBest(p.sets).best_row, 8);
}

TEST(LabelTests, PredictedFromBestRow) {
  ExecutionMatrix m = MatrixFromBits({"100"});
  m.cells[0][2].status = ExecStatus::kTimeout;
  auto labels = LabelTests(0, m, std::nullopt);
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0].predicted, Validity::kValid);
  EXPECT_EQ(labels[1].predicted, Validity::kInvalid);
  EXPECT_EQ(labels[2].predicted, Validity::kInvalid);
  for (const auto& l : labels) EXPECT_FALSE(l.actual);

  std::vector<ExecutionOutcome> truth(3);
  truth[0].status = ExecStatus::kPass;
  truth[1].status = ExecStatus::kPass;
  truth[2].status = ExecStatus::kFail;
  labels = LabelTests(0, m, truth);
  EXPECT_EQ(labels[0].actual, Validity::kValid);
  EXPECT_EQ(labels[1].actual, Validity::kValid);
  EXPECT_EQ(labels[2].actual, Validity::kInvalid);
  EXPECT_EQ(labels[1].stub_id, 1);

  EXPECT_THROW(LabelTests(1, m, std::nullopt), PreconditionError);
  truth.pop_back();
  EXPECT_THROW(LabelTests(0, m, truth), PreconditionError);
}

}  // namespace
}  // namespace convertest
