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

#ifndef CONVERTEST_TESTGEN_H_
#define CONVERTEST_TESTGEN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convertest/canonical.h"
#include "convertest/core.h"
#include "convertest/generation.h"
#include "convertest/provider.h"

namespace convertest {

// Completions of one stub that canonicalize to the same key.
struct CompletionGroup {
  std::string canonical_key;
  std::vector<TestCase> members;  // ascending sample_index

  int frequency() const { return static_cast<int>(members.size()); }
  int first_sample() const { return members.front().sample_index; }
};

struct VoteResult {
  // Ranked: frequency descending, then smallest first sample_index.
  std::vector<CompletionGroup> groups;
  // Smallest-sample member of groups.front(); absent when there are no
  // completions.
  std::optional<TestCase> winner;
};

// Majority vote over completions that already carry canonical keys. The
// result depends only on the (key, sample_index) pairs, not input order.
VoteResult MajorityVote(std::vector<TestCase> completions);

CanonicalizeOptions CanonicalOptionsFor(const Task& task);

// Splits a multi-test file at `def test...` definitions that are not nested in
// another function. Each piece keeps every line outside the test functions
// (imports, helpers, class headers) plus exactly one test function. Throws
// LexError when the file does not lex.
std::vector<std::string> SplitTestFunctions(std::string_view source);

struct StubGenResult {
  std::vector<TestStub> stubs;
  std::vector<std::string> diagnostics;
};

struct StubCompletion {
  std::optional<TestCase> winner;
  std::vector<CompletionGroup> groups;
  int rejected = 0;  // unparseable or assertion-free completions
  std::vector<std::string> diagnostics;
};

struct SuiteResult {
  std::vector<TestCase> tests;
  // Group frequencies per stub for SC strategies, in ranked order.
  std::vector<std::vector<int>> group_frequencies;
  std::vector<std::string> diagnostics;
};

class TestGenerator {
 public:
  TestGenerator(Provider& provider, GenerationOptions options)
      : provider_(provider), options_(std::move(options)) {}

  // One stub_gen request per stub (sample_index = stub id). A stub without a
  // call to the entry point, or with an assertion, is retried twice and then
  // dropped.
  StubGenResult GenerateStubs(const Task& task, int m);

  // N stub_complete samples, canonicalized and majority-voted.
  StubCompletion CompleteStubSc(const Task& task, const TestStub& stub, int n,
                                Strategy tag = Strategy::kSctg);

  // HTG: one holistic_test request split into test functions.
  // TSTG: stubs + CompleteStubSc with N = 1. SCTG: stubs + CompleteStubSc.
  SuiteResult SynthesizeSuite(const Task& task, Strategy strategy, int m,
                              int n);

 private:
  SuiteResult Holistic(const Task& task, int m);

  Provider& provider_;
  GenerationOptions options_;
};

}  // namespace convertest

#endif  // CONVERTEST_TESTGEN_H_
