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

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "convertest/python_lexer.h"

namespace convertest {
namespace {

constexpr char kUnanswered[] = "unanswered";

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<Category> CategoryFromTag(std::string tag) {
  std::string norm;
  for (char c : Trim(tag)) {
    if (c == ' ' || c == '-') {
      norm.push_back('_');
    } else {
      norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  static const std::pair<const char*, Category> kAliases[] = {
      {"correctness", Category::kCorrectness},
      {"logic", Category::kLogic},
      {"logic_and_reasoning", Category::kLogic},
      {"reasoning", Category::kLogic},
      {"edge_case", Category::kEdgeCase},
      {"edge_cases", Category::kEdgeCase},
      {"edge_case_handling", Category::kEdgeCase},
      {"constraint", Category::kConstraint},
      {"constraints", Category::kConstraint},
      {"constraint_adherence", Category::kConstraint},
      {"robustness", Category::kRobustness},
      {"error_handling", Category::kRobustness},
  };
  for (const auto& [name, category] : kAliases) {
    if (norm == name) return category;
  }
  return std::nullopt;
}

std::set<Category> Covered(const std::vector<VerificationQuestion>& questions) {
  std::set<Category> out;
  for (const auto& q : questions) out.insert(q.category);
  return out;
}

VerificationAnswer Unanswered() {
  return VerificationAnswer{kUnanswered, kUnanswered};
}

}  // namespace

std::vector<VerificationQuestion> ParseVerificationPlan(std::string_view text) {
  static const std::regex kLine(
      R"(^\s*(?:[-*]\s*|\d+[.)]\s*)?\[([^\]]+)\]\s*(.*\S)\s*$)");
  std::vector<VerificationQuestion> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_match(line, m, kLine)) continue;
    if (auto category = CategoryFromTag(m[1].str())) {
      out.push_back(VerificationQuestion{*category, m[2].str()});
    }
  }
  return out;
}

std::vector<VerificationAnswer> ParseVerificationAnswers(std::string_view text) {
  static const std::regex kMarker(R"(^\s*ANSWER\s+\d+\s*:\s*(.*)$)",
                                  std::regex::icase);
  std::vector<std::string> bodies;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, kMarker)) {
      bodies.push_back(m[1].str());
    } else if (!bodies.empty()) {
      bodies.back() += "\n" + line;
    }
  }
  std::vector<VerificationAnswer> out;
  for (std::string& body : bodies) {
    VerificationAnswer answer;
    answer.text = Trim(body);
    if (std::size_t at = answer.text.find("ISSUE:"); at != std::string::npos) {
      std::size_t end = answer.text.find('\n', at);
      std::string defect = Trim(std::string_view(answer.text).substr(
          at + 6, end == std::string::npos ? std::string::npos : end - at - 6));
      answer.defect = defect.empty() ? "unspecified defect" : defect;
    }
    out.push_back(std::move(answer));
  }
  return out;
}

VerificationQuestion FallbackQuestion(Category category, const Task& task) {
  const std::string f = "`" + task.entry_point + "`";
  switch (category) {
    case Category::kCorrectness:
      return {category, "Does " + f +
                            " return the correct result for typical valid "
                            "inputs described in the problem?"};
    case Category::kLogic:
      return {category, "Is the algorithm in " + f +
                            " logically sound and complete for every case the "
                            "problem describes?"};
    case Category::kEdgeCase:
      return {category, "How does " + f +
                            " behave on boundary inputs such as empty "
                            "collections, zero, None or a single element?"};
    case Category::kConstraint:
      return {category, "Does " + f +
                            " respect every explicit and implicit constraint of "
                            "the problem, including types, ranges, ordering and "
                            "output format?"};
    case Category::kRobustness:
      return {category, "How does " + f +
                            " handle invalid or unexpected inputs, and does it "
                            "raise the errors the problem requires?"};
  }
  return {category, ""};
}

std::string FormatQuestions(const std::vector<VerificationQuestion>& questions) {
  std::string out;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    out += std::to_string(i + 1) + ". [" +
           std::string(ToString(questions[i].category)) + "] " +
           questions[i].text + "\n";
  }
  return Trim(out);
}

std::string FormatAnswers(const std::vector<VerificationAnswer>& answers) {
  std::string out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    out += "ANSWER " + std::to_string(i + 1) + ": " + answers[i].text + "\n";
  }
  return Trim(out);
}

std::optional<std::string> CodeGenerator::RequestSource(
    const Task& task, TemplateId id, const TemplateVars& vars, int sample_index,
    std::vector<std::string>& diagnostics) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    const GenResponse response = provider_.Generate(
        options_.Request(id, task, vars, sample_index, attempt));
    std::string source = ExtractCodeBlock(response.text);
    if (SourceDefinesFunction(source, task.entry_point)) return source;
    diagnostics.push_back("candidate " + std::to_string(sample_index) + ": " +
                          std::string(ToString(id)) + " attempt " +
                          std::to_string(attempt) + " does not define " +
                          task.entry_point);
  }
  return std::nullopt;
}

CandidateResult CodeGenerator::GenerateVanilla(const Task& task,
                                               int sample_index) {
  CandidateResult result;
  auto source = RequestSource(task, TemplateId::kBaselineCode, TaskVars(task),
                              sample_index, result.diagnostics);
  if (!source) {
    result.diagnostics.push_back("candidate " + std::to_string(sample_index) +
                                 " discarded");
    return result;
  }
  result.candidate = CodeCandidate{task.task_id, sample_index, std::move(*source),
                                   {}, Generator::kVanilla};
  return result;
}

std::vector<VerificationQuestion> CodeGenerator::BuildVerificationPlan(
    const Task& task, std::string_view baseline, int sample_index,
    std::vector<std::string>* diagnostics) {
  if (Trim(baseline).empty()) {
    throw PreconditionError("verification plan needs a non-empty baseline");
  }
  TemplateVars vars = TaskVars(task);
  vars["baseline"] = std::string(baseline);
  auto ask = [&](int attempt) {
    return ParseVerificationPlan(
        provider_
            .Generate(options_.Request(TemplateId::kVerifyPlan, task, vars,
                                       sample_index, attempt))
            .text);
  };
  std::vector<VerificationQuestion> plan = ask(0);
  if (Covered(plan).size() < std::size(kAllCategories)) {
    std::vector<VerificationQuestion> retry = ask(1);
    if (Covered(retry).size() >= Covered(plan).size()) plan = std::move(retry);
  }
  const std::set<Category> covered = Covered(plan);
  for (Category c : kAllCategories) {
    if (covered.count(c) > 0) continue;
    plan.push_back(FallbackQuestion(c, task));
    if (diagnostics) {
      diagnostics->push_back("verification plan lacked " +
                             std::string(ToString(c)) +
                             "; fallback question added");
    }
  }
  return plan;
}

std::vector<VerificationAnswer> CodeGenerator::AskAll(
    const Task& task, std::string_view baseline,
    const std::vector<VerificationQuestion>& questions, int sample_index,
    int attempt) {
  TemplateVars vars = TaskVars(task);
  vars["baseline"] = std::string(baseline);
  vars["questions"] = FormatQuestions(questions);
  return ParseVerificationAnswers(
      provider_
          .Generate(options_.Request(TemplateId::kVerifyAnswer, task, vars,
                                     sample_index, attempt))
          .text);
}

VerificationRecord CodeGenerator::AnswerQuestions(
    const Task& task, std::string_view baseline,
    const std::vector<VerificationQuestion>& questions, int sample_index,
    std::vector<std::string>* diagnostics) {
  if (questions.empty()) {
    throw PreconditionError("answer_questions needs at least one question");
  }
  VerificationRecord record;
  record.questions = questions;
  auto note = [&](const std::string& msg) {
    if (diagnostics) diagnostics->push_back(msg);
  };
  if (codegen_.per_question_answers) {
    for (const VerificationQuestion& q : questions) {
      auto answers = AskAll(task, baseline, {q}, sample_index, 0);
      if (answers.size() != 1) answers = AskAll(task, baseline, {q}, sample_index, 1);
      if (answers.size() != 1) {
        note("no single answer for question: " + q.text);
        record.answers.push_back(Unanswered());
      } else {
        record.answers.push_back(std::move(answers.front()));
      }
    }
  } else {
    auto answers = AskAll(task, baseline, questions, sample_index, 0);
    if (answers.size() != questions.size()) {
      answers = AskAll(task, baseline, questions, sample_index, 1);
    }
    if (answers.size() != questions.size()) {
      note("got " + std::to_string(answers.size()) + " answers for " +
           std::to_string(questions.size()) + " questions; padding");
      answers.resize(std::min(answers.size(), questions.size()));
      while (answers.size() < questions.size()) answers.push_back(Unanswered());
      if (std::none_of(answers.begin(), answers.end(),
                       [](const VerificationAnswer& a) { return !a.defect.empty(); })) {
        // Truncated surplus answers: still treated as an unreliable round.
        answers.back().defect = "answer count mismatch";
      }
    }
    record.answers = std::move(answers);
  }
  const bool issues =
      std::any_of(record.answers.begin(), record.answers.end(),
                  [](const VerificationAnswer& a) { return !a.defect.empty(); });
  record.verdict = issues ? Verdict::kIssuesFound : Verdict::kNoIssues;
  return record;
}

CandidateResult CodeGenerator::GenerateCove(const Task& task, int max_rounds,
                                            int sample_index) {
  if (max_rounds < 1) throw PreconditionError("max_rounds must be >= 1");
  CandidateResult result;
  auto baseline = RequestSource(task, TemplateId::kBaselineCode, TaskVars(task),
                                sample_index, result.diagnostics);
  if (!baseline) {
    result.diagnostics.push_back("candidate " + std::to_string(sample_index) +
                                 " discarded");
    return result;
  }
  CodeCandidate candidate{task.task_id, sample_index, std::move(*baseline), {},
                          Generator::kCove};
  for (int round = 0; round < max_rounds; ++round) {
    auto questions = BuildVerificationPlan(task, candidate.source, sample_index,
                                           &result.diagnostics);
    VerificationRecord record = AnswerQuestions(
        task, candidate.source, questions, sample_index, &result.diagnostics);
    record.iteration = round;
    const bool clean = record.verdict == Verdict::kNoIssues;
    candidate.transcript.push_back(record);
    if (clean) break;

    TemplateVars vars = TaskVars(task);
    vars["baseline"] = candidate.source;
    vars["questions"] = FormatQuestions(record.questions);
    vars["answers"] = FormatAnswers(record.answers);
    auto revised = RequestSource(task, TemplateId::kGuidedRegen, vars,
                                 sample_index, result.diagnostics);
    if (revised) {
      candidate.source = std::move(*revised);
    } else {
      result.diagnostics.push_back("candidate " + std::to_string(sample_index) +
                                   " round " + std::to_string(round) +
                                   ": keeping the last well-formed source");
    }
  }
  result.candidate = std::move(candidate);
  return result;
}

CandidatesResult CodeGenerator::GenerateCandidates(const Task& task, int z,
                                                   Generator generator) {
  if (z < 1) throw PreconditionError("candidate count Z must be >= 1");
  CandidatesResult result;
  for (int i = 0; i < z; ++i) {
    CandidateResult one = generator == Generator::kVanilla
                              ? GenerateVanilla(task, i)
                              : GenerateCove(task, codegen_.max_rounds, i);
    result.diagnostics.insert(result.diagnostics.end(), one.diagnostics.begin(),
                              one.diagnostics.end());
    if (one.candidate) result.candidates.push_back(std::move(*one.candidate));
  }
  if (static_cast<int>(result.candidates.size()) < z) {
    result.diagnostics.push_back(std::to_string(z - static_cast<int>(result.candidates.size())) +
                                 " of " + std::to_string(z) +
                                 " candidates discarded");
  }
  return result;
}

}  // namespace convertest
