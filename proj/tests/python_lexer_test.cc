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

#include <algorithm>

#include <gtest/gtest.h>

#include "convertest/python_lexer.h"

namespace convertest {
namespace {

std::vector<std::string> Texts(const LexResult& r) {
  std::vector<std::string> out;
  for (const Token& t : r.tokens) out.push_back(t.text);
  return out;
}

TEST(Lexer, IndentationAndNewlines) {
  LexResult r = Lex("def f(x):\n    return x\n");
  ASSERT_EQ(r.lines.size(), 2u);
  EXPECT_EQ(r.lines[0].depth, 0);
  EXPECT_EQ(r.lines[1].depth, 1);
  EXPECT_EQ(r.lines[1].first_line, 2);
  int indents = 0;
  int dedents = 0;
  for (const Token& t : r.tokens) {
    indents += t.kind == TokenKind::kIndent;
    dedents += t.kind == TokenKind::kDedent;
  }
  EXPECT_EQ(indents, 1);
  EXPECT_EQ(dedents, 1);
  EXPECT_EQ(r.tokens.back().kind, TokenKind::kEndMarker);
}

TEST(Lexer, BracketsJoinLines) {
  LexResult r = Lex("x = [1,\n     2]\ny = 3\n");
  ASSERT_EQ(r.lines.size(), 2u);
  EXPECT_EQ(r.lines[0].first_line, 1);
  EXPECT_EQ(r.lines[0].last_line, 2);
  EXPECT_EQ(r.lines[1].first_line, 3);
}

TEST(Lexer, BackslashContinuation) {
  LexResult r = Lex("x = 1 + \\\n    2\n");
  EXPECT_EQ(r.lines.size(), 1u);
}

TEST(Lexer, StringsAndComments) {
  LexResult r = Lex("s = rb'a\\\\'  # trailing\nt = '''x\ny'''\n");
  std::vector<std::string> texts = Texts(r);
  EXPECT_NE(std::find(texts.begin(), texts.end(), "rb'a\\\\'"), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "'''x\ny'''"), texts.end());
  for (const std::string& t : texts) EXPECT_EQ(t.find("trailing"), std::string::npos);
}

TEST(Lexer, MultiCharacterOperators) {
  LexResult r = Lex("a **= b // c != d -> e\n");
  std::vector<std::string> texts = Texts(r);
  for (const char* op : {"**=", "//", "!=", "->"}) {
    EXPECT_NE(std::find(texts.begin(), texts.end(), op), texts.end()) << op;
  }
}

TEST(Lexer, Errors) {
  EXPECT_THROW(Lex("s = 'open\n"), LexError);
  EXPECT_THROW(Lex("x = (1,\n"), LexError);
  EXPECT_THROW(Lex("x = 1)\n"), LexError);
  EXPECT_THROW(Lex("if x:\n        a\n    b\n"), LexError);
  EXPECT_THROW(Lex("x = 1 $ 2\n"), LexError);
  try {
    Lex("a = 1\nb = 'x\n");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Lexer, AssertionDetection) {
  EXPECT_TRUE(SourceContainsAssertion("def t():\n    assert f(1) == 2\n"));
  EXPECT_TRUE(SourceContainsAssertion("self.assertEqual(f(1), 2)\n"));
  EXPECT_TRUE(SourceContainsAssertion("with pytest.raises(ValueError):\n    f(-1)\n"));
  EXPECT_TRUE(SourceContainsAssertion("np.testing.assert_allclose(f(1), 2)\n"));
  EXPECT_FALSE(SourceContainsAssertion("def t():\n    r = f(1)\n"));
  EXPECT_FALSE(SourceContainsAssertion("s = 'assert x'\n"));
  EXPECT_FALSE(SourceContainsAssertion("s = 'open\n"));
}

TEST(Lexer, CallAndDefinitionDetection) {
  EXPECT_TRUE(SourceContainsCall("r = add(1, 2)\n", "add"));
  EXPECT_FALSE(SourceContainsCall("def add(a, b):\n    return a\n", "add"));
  EXPECT_FALSE(SourceContainsCall("r = add\n", "add"));
  EXPECT_TRUE(SourceDefinesFunction("def add(a, b):\n    return a\n", "add"));
  EXPECT_FALSE(SourceDefinesFunction("def adder(a):\n    return a\n", "add"));
  // Textual fallback for sources that do not lex.
  EXPECT_TRUE(SourceDefinesFunction("def add(a, b):\n    return 'x\n", "add"));
  EXPECT_TRUE(SourceContainsIdentifier("x = add\n", "add"));
  EXPECT_FALSE(SourceContainsIdentifier("x = 'add'\n", "add"));
}

TEST(Lexer, KeywordsAndBuiltins) {
  EXPECT_TRUE(IsPythonKeyword("lambda"));
  EXPECT_FALSE(IsPythonKeyword("print"));
  EXPECT_TRUE(IsPythonBuiltin("print"));
  EXPECT_TRUE(IsPythonBuiltin("ValueError"));
  EXPECT_FALSE(IsPythonBuiltin("add"));
}

}  // namespace
}  // namespace convertest
