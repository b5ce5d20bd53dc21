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

#include "test_util.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unistd.h>

namespace convertest::testing {

namespace fs = std::filesystem;

fs::path SourceDir() { return CONVERTEST_SOURCE_DIR; }
fs::path DataFile(const std::string& name) { return SourceDir() / "data" / name; }
std::string FakeHarness() { return CONVERTEST_FAKE_HARNESS; }
std::string Cli() { return CONVERTEST_CLI; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("convertest-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

ExecutionMatrix MatrixFromBits(const std::vector<std::string>& rows) {
  ExecutionMatrix m;
  m.task_id = "t";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.candidates.push_back(static_cast<int>(i));
    std::vector<ExecutionOutcome> row;
    for (char c : rows[i]) {
      ExecutionOutcome o;
      o.status = c == '1' ? ExecStatus::kPass : ExecStatus::kFail;
      row.push_back(o);
    }
    m.cells.push_back(std::move(row));
  }
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < cols; ++j) m.tests.push_back(static_cast<int>(j));
  return m;
}

ExecutionMatrix RandomMatrix(std::mt19937_64& rng, int max_rows, int max_cols) {
  std::uniform_int_distribution<int> rows_dist(1, max_rows);
  std::uniform_int_distribution<int> cols_dist(1, max_cols);
  const int rows = rows_dist(rng);
  const int cols = cols_dist(rng);
  // Few distinct row patterns so that groups of equal rows are common.
  std::uniform_int_distribution<int> patterns_dist(1, rows);
  const int patterns = patterns_dist(rng);
  std::vector<std::string> pool;
  std::bernoulli_distribution bit(0.5);
  for (int p = 0; p < patterns; ++p) {
    std::string s;
    for (int j = 0; j < cols; ++j) s.push_back(bit(rng) ? '1' : '0');
    pool.push_back(s);
  }
  std::uniform_int_distribution<int> pick(0, patterns - 1);
  std::vector<std::string> bits;
  for (int i = 0; i < rows; ++i) bits.push_back(pool[pick(rng)]);
  ExecutionMatrix m = MatrixFromBits(bits);
  // Non-pass statuses vary; only pass matters for agreement.
  static constexpr ExecStatus kNotPass[] = {ExecStatus::kFail, ExecStatus::kError,
                                            ExecStatus::kTimeout};
  std::uniform_int_distribution<int> status(0, 2);
  for (auto& row : m.cells) {
    for (auto& cell : row) {
      if (!cell.passed()) cell.status = kNotPass[status(rng)];
    }
  }
  return m;
}

std::string CheckAgainstBruteForce(const ExecutionMatrix& matrix,
                                   const std::vector<AgreementSet>& partition,
                                   int best_row) {
  const std::size_t z = matrix.rows();
  auto same = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (matrix.at(a, j).passed() != matrix.at(b, j).passed()) return false;
    }
    return true;
  };
  std::vector<std::vector<int>> groups;
  std::vector<bool> seen(z, false);
  for (std::size_t a = 0; a < z; ++a) {
    if (seen[a]) continue;
    std::vector<int> group;
    for (std::size_t b = a; b < z; ++b) {
      if (!seen[b] && same(a, b)) {
        seen[b] = true;
        group.push_back(static_cast<int>(b));
      }
    }
    groups.push_back(std::move(group));
  }
  if (groups.size() != partition.size()) {
    return "expected " + std::to_string(groups.size()) + " sets, got " +
           std::to_string(partition.size());
  }
  for (const AgreementSet& set : partition) {
    if (std::find(groups.begin(), groups.end(), set.members) == groups.end()) {
      return "set with members starting at " + std::to_string(set.members.front()) +
             " is not a row-equality group";
    }
    if (set.pass_vector != matrix.PassRow(static_cast<std::size_t>(set.members.front()))) {
      return "pass vector mismatch";
    }
  }

  auto passed = [&](const std::vector<int>& g) {
    int p = 0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      p += matrix.at(static_cast<std::size_t>(g.front()), j).passed();
    }
    return p;
  };
  const std::vector<int>* best = nullptr;
  double best_score = -1.0;
  for (const auto& g : groups) {
    const int p = passed(g);
    const double score = p * std::sqrt(static_cast<double>(g.size()));
    if (best != nullptr) {
      const double tolerance = 1e-9 * std::max(1.0, best_score);
      if (score < best_score - tolerance) continue;
      if (std::abs(score - best_score) <= tolerance) {
        const int bp = passed(*best);
        if (p < bp || (p == bp && g.front() > best->front())) continue;
      }
    }
    best = &g;
    best_score = score;
  }
  if (best->front() != best_row) {
    return "best row should be " + std::to_string(best->front()) + ", got " +
           std::to_string(best_row);
  }
  return "";
}

RunConfig MiniConfig(Strategy strategy, Generator generator) {
  RunConfig c;
  c.tasks = DataFile("mini_benchmark.jsonl");
  c.strategy = strategy;
  c.generator = generator;
  c.m = 3;
  c.n = 3;
  c.z = 3;
  c.max_rounds = 3;
  c.provider = ProviderMode::kMock;
  c.mock_script = DataFile("mini_mock.json");
  c.executor = ExecutorMode::kSimulated;
  c.exec_fixture = DataFile("mini_exec.json");
  c.workers = 4;
  return c;
}

}  // namespace convertest::testing
