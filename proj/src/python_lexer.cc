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

#include "convertest/python_lexer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <unordered_set>

namespace convertest {
namespace {

// Multi-character operators, longest first.
constexpr std::array<std::string_view, 24> kMultiOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<",
    ">>",  "<=",  ">=",  "==",  "!=",  "+=", "-=", "*=", "/=", "%=",
    "&=",  "|=",  "^=",  "@="};
constexpr std::string_view kSingleOps = "+-*/%@&|^~<>()[]{},:.;=";

bool IsNameStart(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool IsNameChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool IsStringPrefix(std::string_view s) {
  if (s.empty() || s.size() > 2) return false;
  std::string l;
  for (char c : s) l.push_back(static_cast<char>(std::tolower(c)));
  return l == "r" || l == "b" || l == "u" || l == "f" || l == "br" ||
         l == "rb" || l == "fr" || l == "rf";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult Run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) {
      if (at_line_start_ && depth_ == 0) {
        if (!StartLine()) continue;
      }
      LexToken();
    }
    if (depth_ > 0) throw LexError(bracket_lines_.back(), "unclosed bracket");
    if (line_open_) EmitNewline();
    while (indents_.size() > 1) {
      indents_.pop_back();
      Push(TokenKind::kDedent, "");
    }
    Push(TokenKind::kEndMarker, "");
    return std::move(result_);
  }

 private:
  // Measures indentation at the start of a physical line. Returns false when
  // the line is blank or comment-only (consumed entirely).
  bool StartLine() {
    int col = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ') {
        ++col;
      } else if (c == '\t') {
        col = (col / 8 + 1) * 8;
      } else if (c == '\f') {
        col = 0;
      } else {
        break;
      }
      ++pos_;
    }
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (c == '#' || c == '\n' || c == '\r') {
      SkipToLineEnd();
      return false;
    }
    if (c == '\\' && NextIsNewline(pos_ + 1)) {
      // A continuation on an otherwise empty line.
      SkipContinuation();
      return false;
    }
    at_line_start_ = false;
    if (col > indents_.back()) {
      indents_.push_back(col);
      Push(TokenKind::kIndent, "");
    } else {
      while (col < indents_.back()) {
        indents_.pop_back();
        Push(TokenKind::kDedent, "");
      }
      if (col != indents_.back()) {
        throw LexError(line_, "unindent does not match any outer level");
      }
    }
    return true;
  }

  void SkipToLineEnd() {
    while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
    if (pos_ < src_.size()) {
      ++pos_;
      ++line_;
    }
  }

  bool NextIsNewline(std::size_t p) const {
    if (p < src_.size() && src_[p] == '\n') return true;
    return p + 1 < src_.size() && src_[p] == '\r' && src_[p + 1] == '\n';
  }

  void SkipContinuation() {
    ++pos_;  // backslash
    if (src_[pos_] == '\r') ++pos_;
    ++pos_;
    ++line_;
  }

  void LexToken() {
    char c = src_[pos_];
    if (c == ' ' || c == '\t' || c == '\f' || c == '\r') {
      ++pos_;
      return;
    }
    if (c == '#') {
      while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      return;
    }
    if (c == '\n') {
      ++pos_;
      if (depth_ == 0) {
        if (line_open_) EmitNewline();
        at_line_start_ = true;
      }
      ++line_;
      return;
    }
    if (c == '\\') {
      if (!NextIsNewline(pos_ + 1)) {
        throw LexError(line_, "unexpected character after line continuation");
      }
      SkipContinuation();
      return;
    }
    if (IsNameStart(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             IsNameChar(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
      std::string_view word = src_.substr(start, pos_ - start);
      if (pos_ < src_.size() && (src_[pos_] == '\'' || src_[pos_] == '"') &&
          IsStringPrefix(word)) {
        LexString(start);
        return;
      }
      Push(TokenKind::kName, std::string(word));
      return;
    }
    if (c == '\'' || c == '"') {
      LexString(pos_);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      LexNumber();
      return;
    }
    LexOperator();
  }

  void LexString(std::size_t start) {
    const int start_line = line_;
    while (src_[pos_] != '\'' && src_[pos_] != '"') ++pos_;
    // Escapes skip the next character in raw strings too, so a raw prefix
    // needs no special casing here.
    const char quote = src_[pos_];
    const bool triple = pos_ + 2 < src_.size() && src_[pos_ + 1] == quote &&
                        src_[pos_ + 2] == quote;
    pos_ += triple ? 3 : 1;
    while (true) {
      if (pos_ >= src_.size()) {
        throw LexError(start_line, "unterminated string literal");
      }
      char c = src_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') ++line_;
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!triple) throw LexError(start_line, "unterminated string literal");
        ++line_;
        ++pos_;
        continue;
      }
      if (c == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (pos_ + 2 < src_.size() && src_[pos_ + 1] == quote &&
            src_[pos_ + 2] == quote) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    PushAt(TokenKind::kString, std::string(src_.substr(start, pos_ - start)),
           start_line);
  }

  void LexNumber() {
    const std::size_t start = pos_;
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() &&
             (pred(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
      }
    };
    auto is_dec = [](unsigned char c) { return std::isdigit(c) != 0; };
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
        std::string_view("xXoObB").find(src_[pos_ + 1]) !=
            std::string_view::npos) {
      char base = static_cast<char>(std::tolower(src_[pos_ + 1]));
      pos_ += 2;
      const std::size_t body = pos_;
      if (base == 'x') {
        digits([](unsigned char c) { return std::isxdigit(c) != 0; });
      } else if (base == 'o') {
        digits([](unsigned char c) { return c >= '0' && c <= '7'; });
      } else {
        digits([](unsigned char c) { return c == '0' || c == '1'; });
      }
      if (pos_ == body) throw LexError(line_, "invalid number literal");
    } else {
      digits(is_dec);
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        digits(is_dec);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
          ++pos_;
        }
        const std::size_t exp = pos_;
        digits(is_dec);
        if (pos_ == exp) pos_ = save;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) {
        ++pos_;
      }
    }
    if (pos_ < src_.size() &&
        IsNameChar(static_cast<unsigned char>(src_[pos_]))) {
      throw LexError(line_, "invalid number literal");
    }
    Push(TokenKind::kNumber, std::string(src_.substr(start, pos_ - start)));
  }

  void LexOperator() {
    for (std::string_view op : kMultiOps) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        Push(TokenKind::kOp, std::string(op));
        return;
      }
    }
    const char c = src_[pos_];
    if (kSingleOps.find(c) == std::string_view::npos) {
      throw LexError(line_, std::string("unexpected character '") + c + "'");
    }
    if (c == '(' || c == '[' || c == '{') {
      ++depth_;
      brackets_.push_back(c);
      bracket_lines_.push_back(line_);
    } else if (c == ')' || c == ']' || c == '}') {
      const char open = c == ')' ? '(' : (c == ']' ? '[' : '{');
      if (brackets_.empty() || brackets_.back() != open) {
        throw LexError(line_, std::string("unmatched '") + c + "'");
      }
      brackets_.pop_back();
      bracket_lines_.pop_back();
      --depth_;
    }
    ++pos_;
    Push(TokenKind::kOp, std::string(1, c));
  }

  void Push(TokenKind kind, std::string text) {
    PushAt(kind, std::move(text), line_);
  }

  void PushAt(TokenKind kind, std::string text, int line) {
    const bool real = kind != TokenKind::kIndent &&
                      kind != TokenKind::kDedent &&
                      kind != TokenKind::kNewline &&
                      kind != TokenKind::kEndMarker;
    if (real && !line_open_) {
      line_open_ = true;
      current_.first_line = line;
      current_.depth = static_cast<int>(indents_.size()) - 1;
      current_.begin = result_.tokens.size();
    }
    result_.tokens.push_back(Token{kind, std::move(text), line});
  }

  void EmitNewline() {
    current_.end = result_.tokens.size();
    current_.last_line = line_;
    result_.tokens.push_back(Token{TokenKind::kNewline, "", line_});
    result_.lines.push_back(current_);
    line_open_ = false;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  bool line_open_ = false;
  std::vector<int> indents_;
  std::vector<char> brackets_;
  std::vector<int> bracket_lines_;
  LogicalLine current_;
  LexResult result_;
};

bool IsAssertName(std::string_view name) {
  return name.rfind("assert", 0) == 0 || name.rfind("assert_", 0) == 0;
}

}  // namespace

LexResult Lex(std::string_view source) { return Lexer(source).Run(); }

bool IsPythonKeyword(std::string_view name) {
  static const std::unordered_set<std::string_view> kKeywords = {
      "False",  "None",   "True",    "and",      "as",       "assert",
      "async",  "await",  "break",   "class",    "continue", "def",
      "del",    "elif",   "else",    "except",   "finally",  "for",
      "from",   "global", "if",      "import",   "in",       "is",
      "lambda", "nonlocal", "not",   "or",       "pass",     "raise",
      "return", "try",    "while",   "with",     "yield",    "match",
      "case"};
  return kKeywords.count(name) > 0;
}

bool IsPythonBuiltin(std::string_view name) {
  static const std::unordered_set<std::string_view> kBuiltins = {
      "abs",       "all",        "any",        "ascii",      "bin",
      "bool",      "bytearray",  "bytes",      "callable",   "chr",
      "complex",   "dict",       "dir",        "divmod",     "enumerate",
      "filter",    "float",      "format",     "frozenset",  "getattr",
      "hasattr",   "hash",       "hex",        "id",         "input",
      "int",       "isinstance", "issubclass", "iter",       "len",
      "list",      "map",        "max",        "min",        "next",
      "object",    "oct",        "open",       "ord",        "pow",
      "print",     "range",      "repr",       "reversed",   "round",
      "set",       "setattr",    "slice",      "sorted",     "str",
      "sum",       "super",      "tuple",      "type",       "vars",
      "zip",       "Exception",  "ValueError", "TypeError",  "KeyError",
      "IndexError", "ZeroDivisionError", "AttributeError", "RuntimeError",
      "StopIteration", "AssertionError", "NotImplementedError",
      "OverflowError", "FileNotFoundError", "OSError", "ArithmeticError",
      "LookupError", "RecursionError", "NotImplemented", "Ellipsis",
      "__name__",  "__main__"};
  return kBuiltins.count(name) > 0;
}

bool ContainsAssertion(const std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind != TokenKind::kName) continue;
    if (IsAssertName(t.text)) return true;
    if (t.text == "raises" && i >= 2 && tokens[i - 1].Is(TokenKind::kOp, ".") &&
        tokens[i - 2].Is(TokenKind::kName, "pytest")) {
      return true;
    }
  }
  return false;
}

bool ContainsCall(const std::vector<Token>& tokens, std::string_view name) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].Is(TokenKind::kName, name) &&
        tokens[i + 1].Is(TokenKind::kOp, "(") &&
        !(i > 0 && tokens[i - 1].Is(TokenKind::kName, "def"))) {
      return true;
    }
  }
  return false;
}

bool DefinesFunction(const std::vector<Token>& tokens, std::string_view name) {
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].Is(TokenKind::kName, "def") &&
        tokens[i + 1].Is(TokenKind::kName, name)) {
      return true;
    }
  }
  return false;
}

bool ContainsIdentifier(const std::vector<Token>& tokens,
                        std::string_view name) {
  return std::any_of(tokens.begin(), tokens.end(), [&](const Token& t) {
    return t.Is(TokenKind::kName, name);
  });
}

bool SourceContainsAssertion(std::string_view source) {
  try {
    return ContainsAssertion(Lex(source).tokens);
  } catch (const LexError&) {
    return false;
  }
}

bool SourceContainsCall(std::string_view source, std::string_view name) {
  try {
    return ContainsCall(Lex(source).tokens, name);
  } catch (const LexError&) {
    return false;
  }
}

bool SourceDefinesFunction(std::string_view source, std::string_view name) {
  try {
    return DefinesFunction(Lex(source).tokens, name);
  } catch (const LexError&) {
    const std::regex def("(^|\\n)[ \\t]*(async[ \\t]+)?def[ \\t]+" +
                         std::string(name) + "[ \\t]*\\(");
    return std::regex_search(source.begin(), source.end(), def);
  }
}

bool SourceContainsIdentifier(std::string_view source, std::string_view name) {
  try {
    return ContainsIdentifier(Lex(source).tokens, name);
  } catch (const LexError&) {
    return false;
  }
}

}  // namespace convertest
