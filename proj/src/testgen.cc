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

#include "convertest/testgen.h"

#include <algorithm>
#include <map>
#include <utility>

#include "convertest/python_lexer.h"

namespace convertest {
namespace {

// Logical line opens a function definition; returns its name.
std::optional<std::string> DefName(const LexResult& lexed,
                                   const LogicalLine& line) {
  std::size_t i = line.begin;
  if (i < line.end && lexed.tokens[i].Is(TokenKind::kName, "async")) ++i;
  if (i + 1 < line.end && lexed.tokens[i].Is(TokenKind::kName, "def") &&
      lexed.tokens[i + 1].kind == TokenKind::kName) {
    return lexed.tokens[i + 1].text;
  }
  return std::nullopt;
}

std::vector<std::string_view> SplitLines(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

std::string TrimTrailing(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ' ||
                        s.back() == '\t' || s.back() == '\r')) {
    s.pop_back();
  }
  return s;
}

}  // namespace

CanonicalizeOptions CanonicalOptionsFor(const Task& task) {
  return CanonicalizeOptions{task.entry_point, {}};
}

VoteResult MajorityVote(std::vector<TestCase> completions) {
  std::sort(completions.begin(), completions.end(),
            [](const TestCase& a, const TestCase& b) {
              return a.sample_index < b.sample_index;
            });
  std::map<std::string, std::size_t> index;
  VoteResult result;
  for (TestCase& t : completions) {
    auto [it, inserted] = index.try_emplace(t.canonical_key, result.groups.size());
    if (inserted) result.groups.push_back(CompletionGroup{t.canonical_key, {}});
    result.groups[it->second].members.push_back(std::move(t));
  }
  std::sort(result.groups.begin(), result.groups.end(),
            [](const CompletionGroup& a, const CompletionGroup& b) {
              if (a.frequency() != b.frequency()) {
                return a.frequency() > b.frequency();
              }
              return a.first_sample() < b.first_sample();
            });
  if (!result.groups.empty()) result.winner = result.groups.front().members.front();
  return result;
}

std::vector<std::string> SplitTestFunctions(std::string_view source) {
  const LexResult lexed = Lex(source);

  struct Scope {
    int depth;
    bool function;
  };
  std::vector<Scope> scopes;
  std::vector<std::pair<int, int>> regions;  // inclusive physical lines
  const auto& lines = lexed.lines;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const LogicalLine& line = lines[k];
    while (!scopes.empty() && scopes.back().depth >= line.depth) scopes.pop_back();
    const bool in_function =
        std::any_of(scopes.begin(), scopes.end(),
                    [](const Scope& s) { return s.function; });
    const auto name = DefName(lexed, line);
    const bool is_class = lexed.tokens[line.begin].Is(TokenKind::kName, "class");
    if (name || is_class) scopes.push_back(Scope{line.depth, name.has_value()});
    if (!name || in_function || name->rfind("test", 0) != 0) continue;

    int start = line.first_line;
    for (std::size_t d = k; d-- > 0;) {
      if (lines[d].depth != line.depth ||
          !lexed.tokens[lines[d].begin].Is(TokenKind::kOp, "@")) {
        break;
      }
      start = lines[d].first_line;
    }
    int end = line.last_line;
    for (std::size_t b = k + 1; b < lines.size() && lines[b].depth > line.depth;
         ++b) {
      end = lines[b].last_line;
    }
    regions.emplace_back(start, end);
  }

  const auto physical = SplitLines(source);
  auto region_of = [&](int line_no) -> int {
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (line_no >= regions[r].first && line_no <= regions[r].second) {
        return static_cast<int>(r);
      }
    }
    return -1;
  };
  std::vector<std::string> pieces;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    std::string piece;
    for (std::size_t i = 0; i < physical.size(); ++i) {
      const int owner = region_of(static_cast<int>(i) + 1);
      if (owner == -1 || owner == static_cast<int>(r)) {
        piece.append(physical[i]);
        piece.push_back('\n');
      }
    }
    pieces.push_back(TrimTrailing(std::move(piece)));
  }
  return pieces;
}

StubGenResult TestGenerator::GenerateStubs(const Task& task, int m) {
  if (m < 1) throw PreconditionError("stub count M must be >= 1");
  constexpr int kRetries = 2;
  StubGenResult result;
  TemplateVars vars = TaskVars(task);
  vars["stub_count"] = std::to_string(m);
  for (int j = 0; j < m; ++j) {
    vars["stub_index"] = std::to_string(j + 1);
    std::string problem;
    for (int attempt = 0; attempt <= kRetries; ++attempt) {
      const GenResponse response = provider_.Generate(
          options_.Request(TemplateId::kStubGen, task, vars, j, attempt));
      std::string source = ExtractCodeBlock(response.text);
      std::vector<Token> tokens;
      try {
        tokens = Lex(source).tokens;
      } catch (const LexError& e) {
        problem = std::string("does not lex (") + e.what() + ")";
        continue;
      }
      if (!ContainsCall(tokens, task.entry_point)) {
        problem = "does not call " + task.entry_point;
        continue;
      }
      if (ContainsAssertion(tokens)) {
        problem = "contains an assertion";
        continue;
      }
      result.stubs.push_back(TestStub{task.task_id, j, std::move(source)});
      problem.clear();
      break;
    }
    if (!problem.empty()) {
      result.diagnostics.push_back("stub " + std::to_string(j) + " dropped after " +
                                   std::to_string(kRetries) + " retries: " +
                                   problem);
    }
  }
  if (static_cast<int>(result.stubs.size()) < m) {
    result.diagnostics.push_back("generated " + std::to_string(result.stubs.size()) +
                                 " of " + std::to_string(m) + " stubs");
  }
  return result;
}

StubCompletion TestGenerator::CompleteStubSc(const Task& task,
                                             const TestStub& stub, int n,
                                             Strategy tag) {
  if (n < 1) throw PreconditionError("sample count N must be >= 1");
  TemplateVars vars = TaskVars(task);
  vars["stub"] = stub.source;
  const CanonicalizeOptions canon = CanonicalOptionsFor(task);
  StubCompletion result;
  std::vector<TestCase> completions;
  for (int s = 0; s < n; ++s) {
    const GenResponse response = provider_.Generate(
        options_.Request(TemplateId::kStubComplete, task, vars, s));
    std::string source = ExtractCodeBlock(response.text);
    auto form = Canonicalize(source, canon);
    if (!form) {
      ++result.rejected;
      result.diagnostics.push_back("stub " + std::to_string(stub.stub_id) +
                                   " sample " + std::to_string(s) +
                                   ": completion does not lex");
      continue;
    }
    if (!SourceContainsAssertion(source)) {
      ++result.rejected;
      result.diagnostics.push_back("stub " + std::to_string(stub.stub_id) +
                                   " sample " + std::to_string(s) +
                                   ": completion has no assertion");
      continue;
    }
    completions.push_back(TestCase{task.task_id, stub.stub_id, s,
                                   std::move(source), std::move(form->key),
                                   tag});
  }
  VoteResult vote = MajorityVote(std::move(completions));
  result.groups = std::move(vote.groups);
  result.winner = std::move(vote.winner);
  if (!result.winner) {
    result.diagnostics.push_back("stub " + std::to_string(stub.stub_id) +
                                 ": no usable completion, stub yields no test");
  }
  return result;
}

SuiteResult TestGenerator::Holistic(const Task& task, int m) {
  SuiteResult result;
  TemplateVars vars = TaskVars(task);
  vars["test_count"] = std::to_string(m);
  const GenResponse response = provider_.Generate(
      options_.Request(TemplateId::kHolisticTest, task, vars, 0));
  const std::string file = ExtractCodeBlock(response.text);
  std::vector<std::string> pieces;
  try {
    pieces = SplitTestFunctions(file);
  } catch (const LexError& e) {
    result.diagnostics.push_back(std::string("holistic response does not lex: ") +
                                 e.what());
    return result;
  }
  if (static_cast<int>(pieces.size()) > m) {
    result.diagnostics.push_back("holistic response has " +
                                 std::to_string(pieces.size()) +
                                 " tests; keeping the first " + std::to_string(m));
    pieces.resize(static_cast<std::size_t>(m));
  }
  const CanonicalizeOptions canon = CanonicalOptionsFor(task);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (!SourceContainsAssertion(pieces[k])) {
      result.diagnostics.push_back("holistic test " + std::to_string(k) +
                                   " has no assertion; skipped");
      continue;
    }
    auto form = Canonicalize(pieces[k], canon);
    if (!form) {
      result.diagnostics.push_back("holistic test " + std::to_string(k) +
                                   " does not lex; skipped");
      continue;
    }
    result.tests.push_back(TestCase{task.task_id, static_cast<int>(k), 0,
                                    std::move(pieces[k]), form->key,
                                    Strategy::kHtg});
  }
  return result;
}

SuiteResult TestGenerator::SynthesizeSuite(const Task& task, Strategy strategy,
                                           int m, int n) {
  if (m < 1) throw PreconditionError("test count M must be >= 1");
  if (strategy == Strategy::kSctg && n < 2) {
    throw PreconditionError("SCTG needs N >= 2");
  }
  SuiteResult result;
  if (strategy == Strategy::kHtg) {
    result = Holistic(task, m);
  } else {
    const int samples = strategy == Strategy::kTstg ? 1 : n;
    StubGenResult stubs = GenerateStubs(task, m);
    result.diagnostics = std::move(stubs.diagnostics);
    for (const TestStub& stub : stubs.stubs) {
      StubCompletion completion = CompleteStubSc(task, stub, samples, strategy);
      std::vector<int> frequencies;
      for (const auto& g : completion.groups) frequencies.push_back(g.frequency());
      result.group_frequencies.push_back(std::move(frequencies));
      result.diagnostics.insert(result.diagnostics.end(),
                                completion.diagnostics.begin(),
                                completion.diagnostics.end());
      if (completion.winner) result.tests.push_back(std::move(*completion.winner));
    }
  }
  if (result.tests.empty()) {
    result.diagnostics.push_back("no usable tests generated");
  }
  return result;
}

}  // namespace convertest
