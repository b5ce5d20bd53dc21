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

#ifndef CONVERTEST_CORE_H_
#define CONVERTEST_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace convertest {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated operation precondition (bad argument from the caller).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Errors that must abort a whole run rather than quarantine one task:
// unreachable harness, incomplete executor fixture, unusable configuration.
class FatalError : public Error {
 public:
  using Error::Error;
};

enum class Strategy { kHtg, kTstg, kSctg };
enum class Generator { kVanilla, kCove };
enum class Category { kCorrectness, kLogic, kEdgeCase, kConstraint, kRobustness };
enum class Verdict { kNoIssues, kIssuesFound };
enum class ExecStatus { kPass, kFail, kError, kTimeout };
enum class Validity { kValid, kInvalid };

inline constexpr Category kAllCategories[] = {
    Category::kCorrectness, Category::kLogic, Category::kEdgeCase,
    Category::kConstraint, Category::kRobustness};

std::string_view ToString(Strategy s);
std::string_view ToString(Generator g);
std::string_view ToString(Category c);
std::string_view ToString(Verdict v);
std::string_view ToString(ExecStatus s);
std::string_view ToString(Validity v);

// Parsers accept exactly the strings produced by ToString; they throw Error
// otherwise. ParseStrategy is case-insensitive since it is user-facing.
Strategy ParseStrategy(std::string_view s);
Generator ParseGenerator(std::string_view s);
Category ParseCategory(std::string_view s);
Verdict ParseVerdict(std::string_view s);
ExecStatus ParseExecStatus(std::string_view s);
Validity ParseValidity(std::string_view s);

// One benchmark problem.
struct Task {
  std::string task_id;
  std::string description;
  std::string entry_point;
  std::string signature;
  std::optional<std::string> setup_code;
  // Reference solution; only consulted at evaluation time.
  std::optional<std::string> ground_truth;

  bool operator==(const Task&) const = default;
};

// Test skeleton: setup, inputs and the call under test, no assertions.
struct TestStub {
  std::string task_id;
  int stub_id = 0;
  std::string source;

  bool operator==(const TestStub&) const = default;
};

struct TestCase {
  std::string task_id;
  int stub_id = 0;
  int sample_index = 0;
  std::string source;
  std::string canonical_key;
  Strategy strategy = Strategy::kSctg;

  bool operator==(const TestCase&) const = default;
};

struct VerificationQuestion {
  Category category = Category::kCorrectness;
  std::string text;

  bool operator==(const VerificationQuestion&) const = default;
};

struct VerificationAnswer {
  std::string text;
  // Non-empty iff the answer reports a defect.
  std::string defect;

  bool operator==(const VerificationAnswer&) const = default;
};

struct VerificationRecord {
  std::vector<VerificationQuestion> questions;
  std::vector<VerificationAnswer> answers;
  Verdict verdict = Verdict::kNoIssues;
  int iteration = 0;

  bool operator==(const VerificationRecord&) const = default;
};

struct CodeCandidate {
  std::string task_id;
  int candidate_index = 0;
  std::string source;
  std::vector<VerificationRecord> transcript;
  Generator generator = Generator::kVanilla;

  bool operator==(const CodeCandidate&) const = default;
};

struct ExecutionOutcome {
  ExecStatus status = ExecStatus::kError;
  std::set<int> covered_lines;
  std::int64_t wall_ms = 0;
  std::string diagnostic;

  bool passed() const { return status == ExecStatus::kPass; }
  bool operator==(const ExecutionOutcome&) const = default;
};

// Fixed-length pass/not-pass vector. fail, error and timeout are all
// "not pass".
class PassVector {
 public:
  PassVector() = default;
  explicit PassVector(std::vector<bool> bits) : bits_(std::move(bits)) {}
  // Parses a string of '0'/'1' characters.
  static PassVector FromString(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  int popcount() const;
  std::string ToString() const;
  const std::vector<bool>& bits() const { return bits_; }

  bool operator==(const PassVector&) const = default;
  auto operator<=>(const PassVector& other) const {
    return bits_ <=> other.bits_;
  }

 private:
  std::vector<bool> bits_;
};

// Z x M grid of execution outcomes. Rows follow `candidates` (candidate
// indices), columns follow `tests` (stub ids).
struct ExecutionMatrix {
  std::string task_id;
  std::vector<int> candidates;
  std::vector<int> tests;
  std::vector<std::vector<ExecutionOutcome>> cells;

  std::size_t rows() const { return candidates.size(); }
  std::size_t cols() const { return tests.size(); }
  const ExecutionOutcome& at(std::size_t row, std::size_t col) const {
    return cells.at(row).at(col);
  }
  PassVector PassRow(std::size_t row) const;

  bool operator==(const ExecutionMatrix&) const = default;
};

// Candidates sharing one pass vector. `members` are matrix row positions.
struct AgreementSet {
  PassVector pass_vector;
  std::vector<int> members;
  double score = 0.0;

  bool operator==(const AgreementSet&) const = default;
};

struct TestLabel {
  std::string task_id;
  int stub_id = 0;
  Validity predicted = Validity::kInvalid;
  std::optional<Validity> actual;

  bool kept() const { return predicted == Validity::kValid; }
  bool operator==(const TestLabel&) const = default;
};

// Non-blank lines that are not pure comments, 1-based. This is L(f) for the
// line-coverage metric.
std::set<int> CodeLines(std::string_view source);
int LineCount(std::string_view source);

}  // namespace convertest

#endif  // CONVERTEST_CORE_H_
