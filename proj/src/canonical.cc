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

#include "convertest/canonical.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "convertest/digest.h"

namespace convertest {
namespace {

// Names that identify test-framework structure rather than test data.
const std::unordered_set<std::string_view>& FrameworkNames() {
  static const std::unordered_set<std::string_view> kNames = {
      "unittest", "TestCase",  "setUp",     "tearDown", "setUpClass",
      "tearDownClass", "setUpModule", "tearDownModule", "self", "cls",
      "main",     "pytest",    "raises",    "approx",   "fixture",
      "mark",     "parametrize", "mock",    "patch",    "MagicMock",
      "Mock",     "subTest",   "fail",      "skipTest", "skip"};
  return kNames;
}

struct StringParts {
  std::string prefix;  // lowercased, without 'u'
  char quote = '"';
  bool triple = false;
  std::string body;

  bool raw() const { return prefix.find('r') != std::string::npos; }
  bool formatted() const { return prefix.find('f') != std::string::npos; }
  bool bytes() const { return prefix.find('b') != std::string::npos; }
  bool plain() const { return !raw() && !formatted(); }
};

StringParts SplitString(std::string_view literal) {
  StringParts parts;
  std::size_t i = 0;
  while (i < literal.size() && literal[i] != '\'' && literal[i] != '"') {
    char c = static_cast<char>(std::tolower(literal[i]));
    if (c != 'u') parts.prefix.push_back(c);
    ++i;
  }
  std::sort(parts.prefix.begin(), parts.prefix.end());
  parts.quote = literal[i];
  parts.triple = literal.size() >= i + 6 && literal[i + 1] == parts.quote &&
                 literal[i + 2] == parts.quote;
  const std::size_t delim = parts.triple ? 3 : 1;
  parts.body = std::string(
      literal.substr(i + delim, literal.size() - i - 2 * delim));
  return parts;
}

void AppendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool ParseHex(std::string_view digits, std::uint32_t& value) {
  if (digits.empty()) return false;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  return ec == std::errc() && ptr == digits.data() + digits.size();
}

// Decodes the escapes of a non-raw literal body. Unknown escapes keep their
// backslash, as in Python.
std::string DecodeEscapes(std::string_view body, bool bytes) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\' || i + 1 >= body.size()) {
      out.push_back(c);
      continue;
    }
    char e = body[++i];
    switch (e) {
      case '\n': break;
      case '\\': out.push_back('\\'); break;
      case '\'': out.push_back('\''); break;
      case '"': out.push_back('"'); break;
      case 'a': out.push_back('\a'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 't': out.push_back('\t'); break;
      case 'v': out.push_back('\v'); break;
      case 'x': {
        std::uint32_t v = 0;
        if (i + 2 < body.size() && ParseHex(body.substr(i + 1, 2), v)) {
          if (bytes) {
            out.push_back(static_cast<char>(v));
          } else {
            AppendUtf8(out, v);
          }
          i += 2;
        } else {
          out += "\\x";
        }
        break;
      }
      case 'u':
      case 'U': {
        const std::size_t n = e == 'u' ? 4 : 8;
        std::uint32_t v = 0;
        if (!bytes && i + n < body.size() &&
            ParseHex(body.substr(i + 1, n), v) && v <= 0x10FFFF) {
          AppendUtf8(out, v);
          i += n;
        } else {
          out.push_back('\\');
          out.push_back(e);
        }
        break;
      }
      default:
        if (e >= '0' && e <= '7') {
          std::uint32_t v = static_cast<std::uint32_t>(e - '0');
          std::size_t k = 1;
          while (k < 3 && i + 1 < body.size() && body[i + 1] >= '0' &&
                 body[i + 1] <= '7') {
            v = v * 8 + static_cast<std::uint32_t>(body[++i] - '0');
            ++k;
          }
          if (bytes) {
            out.push_back(static_cast<char>(v & 0xFF));
          } else {
            AppendUtf8(out, v);
          }
        } else {
          out.push_back('\\');
          out.push_back(e);
        }
    }
  }
  return out;
}

std::string EncodePlain(std::string_view value, bool bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = bytes ? "b\"" : "\"";
  for (char ch : value) {
    const auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F || (bytes && c >= 0x80)) {
          out += "\\x";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

std::string StripLeadingZeros(std::string s) {
  std::size_t nz = s.find_first_not_of('0');
  if (nz == std::string::npos) return "0";
  return s.substr(nz);
}

}  // namespace

std::string NormalizeStringLiteral(std::string_view literal) {
  StringParts parts = SplitString(literal);
  if (parts.plain()) {
    return EncodePlain(DecodeEscapes(parts.body, parts.bytes()), parts.bytes());
  }
  if (!parts.triple && parts.body.find('"') == std::string::npos &&
      (parts.body.empty() || parts.body.back() != '\\')) {
    return parts.prefix + "\"" + parts.body + "\"";
  }
  const std::string delim(parts.triple ? 3 : 1, parts.quote);
  return parts.prefix + delim + parts.body + delim;
}

std::string NormalizeNumberLiteral(std::string_view literal) {
  std::string s;
  for (char c : literal) {
    if (c != '_') s.push_back(static_cast<char>(std::tolower(c)));
  }
  std::string suffix;
  if (!s.empty() && s.back() == 'j') {
    suffix = "j";
    s.pop_back();
  }
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'o' || s[1] == 'b')) {
    const int base = s[1] == 'x' ? 16 : (s[1] == 'o' ? 8 : 2);
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(s.data() + 2, s.data() + s.size(), value, base);
    if (ec == std::errc() && ptr == s.data() + s.size()) {
      return std::to_string(value) + suffix;
    }
    return s + suffix;
  }
  std::string mantissa = s;
  std::string exponent;
  if (std::size_t e = s.find('e'); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent = s.substr(e + 1);
  }
  std::string out;
  if (std::size_t dot = mantissa.find('.'); dot != std::string::npos) {
    std::string int_part = StripLeadingZeros(mantissa.substr(0, dot));
    std::string frac = mantissa.substr(dot + 1);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    if (frac.empty()) frac = "0";
    out = int_part + "." + frac;
  } else {
    out = StripLeadingZeros(mantissa);
  }
  if (!exponent.empty()) {
    bool negative = exponent[0] == '-';
    if (exponent[0] == '-' || exponent[0] == '+') exponent.erase(0, 1);
    out += "e";
    if (negative) out += "-";
    out += StripLeadingZeros(exponent);
  }
  return out + suffix;
}

CanonicalForm CanonicalizeOrThrow(std::string_view source,
                                  const CanonicalizeOptions& options) {
  const LexResult lexed = Lex(source);

  // Drop docstring-like lines (logical lines made only of string literals).
  std::vector<bool> dropped(lexed.tokens.size(), false);
  for (const LogicalLine& line : lexed.lines) {
    bool only_strings = line.end > line.begin;
    for (std::size_t i = line.begin; i < line.end; ++i) {
      if (lexed.tokens[i].kind != TokenKind::kString) only_strings = false;
    }
    if (!only_strings) continue;
    for (std::size_t i = line.begin; i <= line.end; ++i) dropped[i] = true;
  }
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < lexed.tokens.size(); ++i) {
    if (dropped[i]) continue;
    const Token& t = lexed.tokens[i];
    if (t.kind == TokenKind::kDedent && !tokens.empty() &&
        tokens.back().kind == TokenKind::kIndent) {
      // The block held nothing but a docstring.
      tokens.push_back(Token{TokenKind::kName, "pass", t.line});
      tokens.push_back(Token{TokenKind::kNewline, "", t.line});
    }
    tokens.push_back(t);
  }

  // Names bound by import statements are API names, never renamed.
  std::unordered_set<std::string> preserved(options.preserved.begin(),
                                            options.preserved.end());
  if (!options.entry_point.empty()) preserved.insert(options.entry_point);
  {
    bool in_import = false;
    for (const Token& t : tokens) {
      if (t.kind == TokenKind::kNewline) {
        in_import = false;
      } else if (t.Is(TokenKind::kName, "import") ||
                 t.Is(TokenKind::kName, "from")) {
        in_import = true;
      } else if (in_import && t.kind == TokenKind::kName) {
        preserved.insert(t.text);
      }
    }
  }
  auto is_preserved = [&](const std::string& name) {
    return IsPythonKeyword(name) || IsPythonBuiltin(name) ||
           FrameworkNames().count(name) > 0 || preserved.count(name) > 0 ||
           name.rfind("assert", 0) == 0;
  };

  std::unordered_map<std::string, std::string> renames;
  // One entry per open bracket: true when it opens a def parameter list.
  std::vector<bool> brackets;
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token t = tokens[i];
    if (t.kind == TokenKind::kOp) {
      if (t.text == "(" || t.text == "[" || t.text == "{") {
        const bool params = t.text == "(" && i >= 2 &&
                            tokens[i - 1].kind == TokenKind::kName &&
                            tokens[i - 2].Is(TokenKind::kName, "def");
        brackets.push_back(params);
      } else if ((t.text == ")" || t.text == "]" || t.text == "}") &&
                 !brackets.empty()) {
        brackets.pop_back();
      }
    } else if (t.kind == TokenKind::kString) {
      t.text = NormalizeStringLiteral(t.text);
      // Merge with a directly preceding plain literal of the same kind.
      if (!out.empty() && out.back().kind == TokenKind::kString) {
        StringParts prev = SplitString(out.back().text);
        StringParts cur = SplitString(t.text);
        if (prev.plain() && cur.plain() && prev.bytes() == cur.bytes()) {
          out.back().text = EncodePlain(
              DecodeEscapes(prev.body, prev.bytes()) +
                  DecodeEscapes(cur.body, cur.bytes()),
              cur.bytes());
          continue;
        }
      }
    } else if (t.kind == TokenKind::kNumber) {
      t.text = NormalizeNumberLiteral(t.text);
    } else if (t.kind == TokenKind::kName && !is_preserved(t.text)) {
      const bool attribute = i > 0 && tokens[i - 1].Is(TokenKind::kOp, ".");
      const bool self_attribute =
          attribute && i > 1 && tokens[i - 2].Is(TokenKind::kName, "self") &&
          !(i > 2 && tokens[i - 3].Is(TokenKind::kOp, "."));
      const bool keyword_arg =
          !brackets.empty() && !brackets.back() && i + 1 < tokens.size() &&
          tokens[i + 1].Is(TokenKind::kOp, "=");
      if ((!attribute || self_attribute) && !keyword_arg) {
        auto [it, inserted] = renames.try_emplace(
            t.text, "I" + std::to_string(renames.size()));
        t.text = it->second;
      }
    }
    out.push_back(std::move(t));
  }

  CanonicalForm form;
  int depth = 0;
  bool line_start = true;
  for (const Token& t : out) {
    switch (t.kind) {
      case TokenKind::kIndent: ++depth; break;
      case TokenKind::kDedent: --depth; break;
      case TokenKind::kEndMarker: break;
      case TokenKind::kNewline:
        form.text.push_back('\n');
        line_start = true;
        break;
      default:
        if (line_start) {
          form.text.append(static_cast<std::size_t>(depth) * 4, ' ');
          line_start = false;
        } else {
          form.text.push_back(' ');
        }
        form.text += t.text;
    }
  }
  form.key = Sha256Hex(form.text);
  return form;
}

std::optional<CanonicalForm> Canonicalize(std::string_view source,
                                          const CanonicalizeOptions& options) {
  try {
    return CanonicalizeOrThrow(source, options);
  } catch (const LexError&) {
    return std::nullopt;
  }
}

}  // namespace convertest
