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

#include "convertest/codegen.h"

#include <gtest/gtest.h>

namespace convertest {
namespace {

const Task kTask{"t", "Add two numbers.", "add", "def add(a, b)", {}, {}};

const char kPlan[] =
    "1. [correctness] Does it add?\n"
    "2. [logic] Is the operator right?\n"
    "3. [edge case] What about zero?\n"
    "4. [constraint] Are ints returned?\n"
    "5. [robustness] What about None?\n";

const char kClean[] =
    "ANSWER 1: yes\nANSWER 2: yes\nANSWER 3: fine\nANSWER 4: yes\nANSWER 5: raises";
const char kIssue[] =
    "ANSWER 1: no\nISSUE: subtracts instead of adding\nANSWER 2: yes\n"
    "ANSWER 3: fine\nANSWER 4: yes\nANSWER 5: raises";

std::string Version(int v) {
  return "def add(a, b):\n    return a + b  # v" + std::to_string(v);
}

MockRule Rule(TemplateId id, std::string output, std::optional<std::string> contains = {},
              std::optional<int> attempt = {}) {
  return MockRule{id, {}, std::move(contains), {}, attempt, {}, std::move(output)};
}

// Versions v0..v(n) chained by guided regeneration; answers are clean from
// version `clean_from` onwards.
MockScript CoveScript(int versions, int clean_from) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, "```python\n" + Version(0) + "\n```"));
  script.Add(Rule(TemplateId::kVerifyPlan, kPlan));
  for (int v = 0; v < versions; ++v) {
    const std::string marker = "# v" + std::to_string(v) + "\n";
    script.Add(Rule(TemplateId::kGuidedRegen, Version(v + 1), marker));
    script.Add(Rule(TemplateId::kVerifyAnswer, v >= clean_from ? kClean : kIssue, marker));
  }
  return script;
}

TEST(Cove, CleanBaselineStopsAfterOneRound) {
  MockProvider mock(CoveScript(5, 0));
  CodeGenerator gen(mock, {});
  CandidateResult r = gen.GenerateCove(kTask, 3, 0);
  ASSERT_TRUE(r.candidate);
  EXPECT_EQ(r.candidate->transcript.size(), 1u);
  EXPECT_EQ(r.candidate->source, Version(0));
  EXPECT_EQ(r.candidate->transcript[0].verdict, Verdict::kNoIssues);
  EXPECT_EQ(r.candidate->generator, Generator::kCove);
}

TEST(Cove, OneRegenerationThenClean) {
  MockProvider mock(CoveScript(5, 1));
  CodeGenerator gen(mock, {});
  CandidateResult r = gen.GenerateCove(kTask, 3, 0);
  ASSERT_TRUE(r.candidate);
  ASSERT_EQ(r.candidate->transcript.size(), 2u);
  EXPECT_EQ(r.candidate->transcript[0].verdict, Verdict::kIssuesFound);
  EXPECT_EQ(r.candidate->transcript[0].answers[0].defect, "subtracts instead of adding");
  EXPECT_EQ(r.candidate->transcript[1].verdict, Verdict::kNoIssues);
  EXPECT_EQ(r.candidate->transcript[1].iteration, 1);
  EXPECT_EQ(r.candidate->source, Version(1));
}

TEST(Cove, AlwaysIssuesStopsAtMaxRounds) {
  for (int max_rounds : {1, 3, 4}) {
    MockProvider mock(CoveScript(6, 99));
    CodeGenerator gen(mock, {});
    CandidateResult r = gen.GenerateCove(kTask, max_rounds, 0);
    ASSERT_TRUE(r.candidate);
    EXPECT_EQ(r.candidate->transcript.size(), static_cast<std::size_t>(max_rounds));
    EXPECT_EQ(r.candidate->source, Version(max_rounds));
  }
  MockProvider mock(CoveScript(1, 0));
  EXPECT_THROW(CodeGenerator(mock, {}).GenerateCove(kTask, 0, 0), PreconditionError);
}

TEST(Cove, MalformedRegenerationKeepsLastSource) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, Version(0)));
  script.Add(Rule(TemplateId::kVerifyPlan, kPlan));
  script.Add(Rule(TemplateId::kVerifyAnswer, kIssue));
  script.Add(Rule(TemplateId::kGuidedRegen, "I cannot help with that."));
  MockProvider mock(script);
  CodeGenerator gen(mock, {});
  CandidateResult r = gen.GenerateCove(kTask, 2, 0);
  ASSERT_TRUE(r.candidate);
  EXPECT_EQ(r.candidate->source, Version(0));
  EXPECT_EQ(r.candidate->transcript.size(), 2u);
}

TEST(Vanilla, FencedSolutionIsExtracted) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, "Here:\n```python\n" + Version(0) + "\n```\n"));
  MockProvider mock(script);
  CodeGenerator gen(mock, {});
  CandidateResult r = gen.GenerateVanilla(kTask, 2);
  ASSERT_TRUE(r.candidate);
  EXPECT_EQ(r.candidate->source, Version(0));
  EXPECT_EQ(r.candidate->candidate_index, 2);
  EXPECT_TRUE(r.candidate->transcript.empty());
}

TEST(Vanilla, ProseTwiceIsDiscarded) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, "Just add the numbers."));
  MockProvider mock(script);
  CodeGenerator gen(mock, {});
  CandidateResult r = gen.GenerateVanilla(kTask, 0);
  EXPECT_FALSE(r.candidate);
  ASSERT_EQ(r.diagnostics.size(), 3u);
  EXPECT_NE(r.diagnostics.back().find("discarded"), std::string::npos);
}

TEST(Vanilla, RetryRecovers) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, "prose", {}, 0));
  script.Add(Rule(TemplateId::kBaselineCode, Version(0), {}, 1));
  MockProvider mock(script);
  EXPECT_TRUE(CodeGenerator(mock, {}).GenerateVanilla(kTask, 0).candidate);
}

TEST(Candidates, IndicesFollowSampleOrder) {
  MockScript script;
  script.Add(Rule(TemplateId::kBaselineCode, Version(0)));
  MockProvider mock(script);
  CodeGenerator gen(mock, {});
  CandidatesResult r = gen.GenerateCandidates(kTask, 3, Generator::kVanilla);
  ASSERT_EQ(r.candidates.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.candidates[i].candidate_index, i);
  EXPECT_EQ(gen.GenerateCandidates(kTask, 1, Generator::kVanilla).candidates.size(), 1u);
  EXPECT_THROW(gen.GenerateCandidates(kTask, 0, Generator::kVanilla), PreconditionError);
}

TEST(Candidates, CoveProducesZCandidates) {
  MockProvider mock(CoveScript(5, 1));
  CodeGenerator gen(mock, {});
  CandidatesResult r = gen.GenerateCandidates(kTask, 5, Generator::kCove);
  ASSERT_EQ(r.candidates.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(r.candidates[i].candidate_index, i);
}

TEST(Candidates, DiscardIsListed) {
  MockScript script;
  script.Add(MockRule{TemplateId::kBaselineCode, {}, {}, 1, {}, {}, "no code"});
  script.Add(Rule(TemplateId::kBaselineCode, Version(0)));
  MockProvider mock(script);
  CandidatesResult r = CodeGenerator(mock, {}).GenerateCandidates(kTask, 3, Generator::kVanilla);
  ASSERT_EQ(r.candidates.size(), 2u);
  EXPECT_EQ(r.candidates[1].candidate_index, 2);
  EXPECT_EQ(r.diagnostics.back(), "1 of 3 candidates discarded");
}

TEST(Plan, WellTaggedPlanIsReturnedAsIs) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyPlan, kPlan));
  MockProvider mock(script);
  auto plan = CodeGenerator(mock, {}).BuildVerificationPlan(kTask, Version(0), 0);
  ASSERT_EQ(plan.size(), 5u);
  EXPECT_EQ(plan[2].category, Category::kEdgeCase);
  EXPECT_EQ(plan[2].text, "What about zero?");
}

TEST(Plan, MissingCategoryGetsFallback) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyPlan,
                  "- [correctness] a?\n- [logic] b?\n* [edge_case] c?\n[constraints] d?\nnoise"));
  MockProvider mock(script);
  std::vector<std::string> diagnostics;
  auto plan = CodeGenerator(mock, {}).BuildVerificationPlan(kTask, Version(0), 0, &diagnostics);
  ASSERT_EQ(plan.size(), 5u);
  EXPECT_EQ(plan[4].category, Category::kRobustness);
  EXPECT_EQ(plan[4].text, FallbackQuestion(Category::kRobustness, kTask).text);
  EXPECT_EQ(diagnostics.size(), 1u);
}

TEST(Plan, EmptyBaselineIsRejected) {
  MockProvider mock(MockScript{});
  EXPECT_THROW(CodeGenerator(mock, {}).BuildVerificationPlan(kTask, "  \n", 0),
               PreconditionError);
}

std::vector<VerificationQuestion> Questions() { return ParseVerificationPlan(kPlan); }

TEST(Answers, NoMarkerMeansNoIssues) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyAnswer, kClean));
  MockProvider mock(script);
  auto record = CodeGenerator(mock, {}).AnswerQuestions(kTask, Version(0), Questions(), 0);
  EXPECT_EQ(record.verdict, Verdict::kNoIssues);
  EXPECT_EQ(record.answers.size(), 5u);
}

TEST(Answers, OneIssueMarker) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyAnswer,
                  "ANSWER 1: a\nANSWER 2: b\nANSWER 3: ISSUE: off-by-one on empty list\n"
                  "ANSWER 4: c\nANSWER 5: d"));
  MockProvider mock(script);
  auto record = CodeGenerator(mock, {}).AnswerQuestions(kTask, Version(0), Questions(), 0);
  EXPECT_EQ(record.verdict, Verdict::kIssuesFound);
  EXPECT_EQ(record.answers[2].defect, "off-by-one on empty list");
}

TEST(Answers, CountMismatchIsReaskedThenPadded) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyAnswer, "ANSWER 1: fine\nANSWER 2: fine"));
  MockProvider inner(script);
  CountingProvider mock(std::shared_ptr<Provider>(&inner, [](Provider*) {}));
  std::vector<std::string> diagnostics;
  auto record = CodeGenerator(mock, {}).AnswerQuestions(kTask, Version(0), Questions(), 0,
                                                        &diagnostics);
  EXPECT_EQ(mock.total(), 2);
  ASSERT_EQ(record.answers.size(), 5u);
  EXPECT_EQ(record.answers[4].text, "unanswered");
  EXPECT_EQ(record.verdict, Verdict::kIssuesFound);
  EXPECT_EQ(diagnostics.size(), 1u);
}

TEST(Answers, ReaskRecovers) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyAnswer, "ANSWER 1: fine", {}, 0));
  script.Add(Rule(TemplateId::kVerifyAnswer, kClean, {}, 1));
  MockProvider mock(script);
  auto record = CodeGenerator(mock, {}).AnswerQuestions(kTask, Version(0), Questions(), 0);
  EXPECT_EQ(record.verdict, Verdict::kNoIssues);
}

TEST(Answers, PerQuestionMode) {
  MockScript script;
  script.Add(Rule(TemplateId::kVerifyAnswer, "ANSWER 1: ISSUE: bad", "[robustness]"));
  script.Add(Rule(TemplateId::kVerifyAnswer, "ANSWER 1: ok"));
  MockProvider inner(script);
  CountingProvider mock(std::shared_ptr<Provider>(&inner, [](Provider*) {}));
  CodeGenerator gen(mock, {}, CodegenOptions{3, true});
  auto record = gen.AnswerQuestions(kTask, Version(0), Questions(), 0);
  EXPECT_EQ(mock.total(), 5);
  EXPECT_EQ(record.verdict, Verdict::kIssuesFound);
  EXPECT_EQ(record.answers[4].defect, "bad");
  EXPECT_TRUE(record.answers[0].defect.empty());
}

TEST(Format, QuestionsAndAnswersRoundTrip) {
  auto questions = Questions();
  EXPECT_EQ(ParseVerificationPlan(FormatQuestions(questions)), questions);
  std::vector<VerificationAnswer> answers = {{"fine", ""}, {"ISSUE: wrong sign", "wrong sign"}};
  EXPECT_EQ(ParseVerificationAnswers(FormatAnswers(answers)), answers);
}

}  // namespace
}  // namespace convertest
