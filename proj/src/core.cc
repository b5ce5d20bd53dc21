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

#include "convertest/core.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "convertest/python_lexer.h"

namespace convertest {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void BadEnum(std::string_view kind, std::string_view value) {
  throw Error("unknown " + std::string(kind) + " '" + std::string(value) +
              "'");
}

}  // namespace

std::string_view ToString(Strategy s) {
  switch (s) {
    case Strategy::kHtg: return "HTG";
    case Strategy::kTstg: return "TSTG";
    case Strategy::kSctg: return "SCTG";
  }
  return "?";
}

std::string_view ToString(Generator g) {
  switch (g) {
    case Generator::kVanilla: return "vanilla";
    case Generator::kCove: return "cove";
  }
  return "?";
}

std::string_view ToString(Category c) {
  switch (c) {
    case Category::kCorrectness: return "correctness";
    case Category::kLogic: return "logic";
    case Category::kEdgeCase: return "edge_case";
    case Category::kConstraint: return "constraint";
    case Category::kRobustness: return "robustness";
  }
  return "?";
}

std::string_view ToString(Verdict v) {
  return v == Verdict::kNoIssues ? "no_issues" : "issues_found";
}

std::string_view ToString(ExecStatus s) {
  switch (s) {
    case ExecStatus::kPass: return "pass";
    case ExecStatus::kFail: return "fail";
    case ExecStatus::kError: return "error";
    case ExecStatus::kTimeout: return "timeout";
  }
  return "?";
}

std::string_view ToString(Validity v) {
  return v == Validity::kValid ? "valid" : "invalid";
}

Strategy ParseStrategy(std::string_view s) {
  const std::string l = Lower(s);
  if (l == "htg") return Strategy::kHtg;
  if (l == "tstg") return Strategy::kTstg;
  if (l == "sctg") return Strategy::kSctg;
  BadEnum("strategy", s);
}

Generator ParseGenerator(std::string_view s) {
  const std::string l = Lower(s);
  if (l == "vanilla") return Generator::kVanilla;
  if (l == "cove") return Generator::kCove;
  BadEnum("generator", s);
}

Category ParseCategory(std::string_view s) {
  for (Category c : kAllCategories) {
    if (ToString(c) == s) return c;
  }
  BadEnum("category", s);
}

Verdict ParseVerdict(std::string_view s) {
  if (s == "no_issues") return Verdict::kNoIssues;
  if (s == "issues_found") return Verdict::kIssuesFound;
  BadEnum("verdict", s);
}

ExecStatus ParseExecStatus(std::string_view s) {
  if (s == "pass") return ExecStatus::kPass;
  if (s == "fail") return ExecStatus::kFail;
  if (s == "error") return ExecStatus::kError;
  if (s == "timeout") return ExecStatus::kTimeout;
  BadEnum("execution status", s);
}

Validity ParseValidity(std::string_view s) {
  if (s == "valid") return Validity::kValid;
  if (s == "invalid") return Validity::kInvalid;
  BadEnum("validity", s);
}

PassVector PassVector::FromString(std::string_view bits) {
  std::vector<bool> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error("pass vector must be a 0/1 string, got '" +
                  std::string(bits) + "'");
    }
    out.push_back(c == '1');
  }
  return PassVector(std::move(out));
}

int PassVector::popcount() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::string PassVector::ToString() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

PassVector ExecutionMatrix::PassRow(std::size_t row) const {
  std::vector<bool> bits;
  bits.reserve(cols());
  for (const ExecutionOutcome& cell : cells.at(row)) bits.push_back(cell.passed());
  return PassVector(std::move(bits));
}

int LineCount(std::string_view source) {
  if (source.empty()) return 0;
  int n = static_cast<int>(std::count(source.begin(), source.end(), '\n'));
  if (source.back() != '\n') ++n;
  return n;
}

std::set<int> CodeLines(std::string_view source) {
  std::set<int> lines;
  try {
    for (const LogicalLine& line : Lex(source).lines) {
      lines.insert(line.first_line);
    }
    return lines;
  } catch (const LexError&) {
    // Fall through to the physical-line approximation.
  }
  int number = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    ++number;
    std::string_view line = source.substr(pos, end - pos);
    std::size_t first = line.find_first_not_of(" \t\r\f");
    if (first != std::string_view::npos && line[first] != '#') {
      lines.insert(number);
    }
    if (end == source.size()) break;
    pos = end + 1;
  }
  return lines;
}

}  // namespace convertest
