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

#ifndef CONVERTEST_CODEGEN_H_
#define CONVERTEST_CODEGEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convertest/core.h"
#include "convertest/generation.h"
#include "convertest/provider.h"

namespace convertest {

struct CodegenOptions {
  int max_rounds = 3;
  // Ask each verification question in its own request instead of one call.
  bool per_question_answers = false;
};

// Lines of the form "[category] question", optionally bulleted or numbered.
// Lines with unknown tags are ignored.
std::vector<VerificationQuestion> ParseVerificationPlan(std::string_view text);

// Splits at "ANSWER n:" markers. An answer containing "ISSUE:" gets the rest
// of that line as its defect.
std::vector<VerificationAnswer> ParseVerificationAnswers(std::string_view text);

VerificationQuestion FallbackQuestion(Category category, const Task& task);

std::string FormatQuestions(const std::vector<VerificationQuestion>& questions);
std::string FormatAnswers(const std::vector<VerificationAnswer>& answers);

struct CandidateResult {
  std::optional<CodeCandidate> candidate;
  std::vector<std::string> diagnostics;
};

struct CandidatesResult {
  std::vector<CodeCandidate> candidates;
  std::vector<std::string> diagnostics;
};

class CodeGenerator {
 public:
  CodeGenerator(Provider& provider, GenerationOptions options,
                CodegenOptions codegen = {})
      : provider_(provider), options_(std::move(options)), codegen_(codegen) {}

  // Single baseline_code request. A response without the entry point is
  // retried once; a second miss discards the candidate.
  CandidateResult GenerateVanilla(const Task& task, int sample_index);

  // At least one question per category. A plan missing a category is
  // requested once more; categories still missing get fallback questions.
  std::vector<VerificationQuestion> BuildVerificationPlan(
      const Task& task, std::string_view baseline, int sample_index,
      std::vector<std::string>* diagnostics = nullptr);

  // Verdict is issues_found iff some answer carries the ISSUE: marker. A
  // count mismatch is re-asked once, then padded with "unanswered" answers
  // (which count as issues).
  VerificationRecord AnswerQuestions(
      const Task& task, std::string_view baseline,
      const std::vector<VerificationQuestion>& questions, int sample_index,
      std::vector<std::string>* diagnostics = nullptr);

  // baseline -> (plan -> answers -> stop if clean, else guided regeneration)
  // for at most max_rounds rounds.
  CandidateResult GenerateCove(const Task& task, int max_rounds,
                               int sample_index);

  // Z independent candidates, sample indices 0..Z-1.
  CandidatesResult GenerateCandidates(const Task& task, int z,
                                      Generator generator);

 private:
  std::optional<std::string> RequestSource(const Task& task, TemplateId id,
                                           const TemplateVars& vars,
                                           int sample_index,
                                           std::vector<std::string>& diagnostics);
  std::vector<VerificationAnswer> AskAll(const Task& task,
                                         std::string_view baseline,
                                         const std::vector<VerificationQuestion>& questions,
                                         int sample_index, int attempt);

  Provider& provider_;
  GenerationOptions options_;
  CodegenOptions codegen_;
};

}  // namespace convertest

#endif  // CONVERTEST_CODEGEN_H_
