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

#ifndef CONVERTEST_TESTS_TEST_UTIL_H_
#define CONVERTEST_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "convertest/core.h"
#include "convertest/pipeline.h"

namespace convertest::testing {

std::filesystem::path SourceDir();
std::filesystem::path DataFile(const std::string& name);
std::string FakeHarness();
std::string Cli();

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Matrix whose row i has the pass/fail bits of rows[i] ('1' = pass).
ExecutionMatrix MatrixFromBits(const std::vector<std::string>& rows);
ExecutionMatrix RandomMatrix(std::mt19937_64& rng, int max_rows, int max_cols);

// Mini-benchmark configuration: mock provider and simulated executor over
// the bundled fixtures, M = N = Z = 3.
// Checks `partition` and `selection` against a brute-force grouping that
// compares every pair of rows cell by cell. Returns an empty string on
// agreement, otherwise a description of the first mismatch.
std::string CheckAgainstBruteForce(const ExecutionMatrix& matrix,
                                   const std::vector<AgreementSet>& partition,
                                   int best_row);

RunConfig MiniConfig(Strategy strategy, Generator generator);

}  // namespace convertest::testing

#endif  // CONVERTEST_TESTS_TEST_UTIL_H_
