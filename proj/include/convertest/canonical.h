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

#ifndef CONVERTEST_CANONICAL_H_
#define CONVERTEST_CANONICAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convertest/python_lexer.h"

namespace convertest {

struct CanonicalizeOptions {
  // Never renamed, along with keywords, builtins, imported names, framework
  // names and assert* helpers.
  std::string entry_point;
  std::vector<std::string> preserved;
};

// Normalized token sequence of a test source. `text` is valid Python that
// lexes back to the same sequence; `key` is its SHA-256.
struct CanonicalForm {
  std::string text;
  std::string key;
};

// Normalizes a test source for grouping:
//   - comments, blank lines and docstrings are dropped;
//   - identifiers become I0, I1, ... in first-occurrence order, except
//     preserved names, attribute names (other than attributes of `self`)
//     and keyword-argument names;
//   - plain string literals are decoded and re-encoded with double quotes,
//     adjacent plain literals are merged;
//   - numeric literals lose underscores, leading zeros and radix prefixes,
//     exponents are lowercased;
//   - whitespace is collapsed to single spaces, indentation to a fixed width.
// Throws LexError when the source does not lex.
CanonicalForm CanonicalizeOrThrow(std::string_view source,
                                  const CanonicalizeOptions& options);

// Returns nullopt for unparseable sources; those are excluded from voting.
std::optional<CanonicalForm> Canonicalize(std::string_view source,
                                          const CanonicalizeOptions& options);

// Exposed for tests.
std::string NormalizeStringLiteral(std::string_view literal);
std::string NormalizeNumberLiteral(std::string_view literal);

}  // namespace convertest

#endif  // CONVERTEST_CANONICAL_H_
