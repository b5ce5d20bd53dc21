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

// Tokenizer for the Python subset that benchmark tests and solutions are
// written in. It follows the CPython tokenizer closely enough for grouping
// and lexical checks: INDENT/DEDENT tracking, implicit line joining inside
// brackets, backslash continuation, prefixed and triple-quoted strings.
// Comments are dropped.

#ifndef CONVERTEST_PYTHON_LEXER_H_
#define CONVERTEST_PYTHON_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "convertest/core.h"

namespace convertest {

enum class TokenKind {
  kName,
  kNumber,
  kString,
  kOp,
  kNewline,
  kIndent,
  kDedent,
  kEndMarker,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line = 0;  // 1-based line of the first character

  bool Is(TokenKind k, std::string_view t) const {
    return kind == k && text == t;
  }
  bool operator==(const Token&) const = default;
};

// One logical line: tokens [begin, end) in LexResult::tokens, where `end`
// indexes the terminating NEWLINE token. INDENT/DEDENT tokens that precede
// the line are not part of the range.
struct LogicalLine {
  int first_line = 0;
  int last_line = 0;
  int depth = 0;  // indentation level, 0 = top level
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<LogicalLine> lines;
};

class LexError : public Error {
 public:
  LexError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Throws LexError on unterminated strings, unbalanced brackets, inconsistent
// dedents and characters outside the token grammar.
LexResult Lex(std::string_view source);

bool IsPythonKeyword(std::string_view name);
bool IsPythonBuiltin(std::string_view name);

// Lexical checks over a token stream.

// `assert` statements, assert*-named helpers (assertEqual, assert_allclose)
// and pytest.raises.
bool ContainsAssertion(const std::vector<Token>& tokens);
// `name(` anywhere other than directly after `def`.
bool ContainsCall(const std::vector<Token>& tokens, std::string_view name);
bool DefinesFunction(const std::vector<Token>& tokens, std::string_view name);
bool ContainsIdentifier(const std::vector<Token>& tokens,
                        std::string_view name);

// Source-level conveniences; a source that does not lex fails every check.
bool SourceContainsAssertion(std::string_view source);
bool SourceContainsCall(std::string_view source, std::string_view name);
// Falls back to a textual `def name(` match when the source does not lex,
// since broken candidates are still executed.
bool SourceDefinesFunction(std::string_view source, std::string_view name);
bool SourceContainsIdentifier(std::string_view source, std::string_view name);

}  // namespace convertest

#endif  // CONVERTEST_PYTHON_LEXER_H_
