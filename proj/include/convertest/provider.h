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

#ifndef CONVERTEST_PROVIDER_H_
#define CONVERTEST_PROVIDER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convertest/core.h"
#include "json.hpp"

namespace convertest {

enum class TemplateId {
  kStubGen,
  kStubComplete,
  kHolisticTest,
  kBaselineCode,
  kVerifyPlan,
  kVerifyAnswer,
  kGuidedRegen,
};

inline constexpr TemplateId kAllTemplates[] = {
    TemplateId::kStubGen,      TemplateId::kStubComplete,
    TemplateId::kHolisticTest, TemplateId::kBaselineCode,
    TemplateId::kVerifyPlan,   TemplateId::kVerifyAnswer,
    TemplateId::kGuidedRegen};

std::string_view ToString(TemplateId id);
TemplateId ParseTemplateId(std::string_view s);

// Prompt templates live in templates/<id>.txt and are compiled in. The hash
// enters every cache key, so editing a template invalidates its responses.
struct PromptTemplate {
  TemplateId id;
  std::string_view text;
  std::string hash;
};

const PromptTemplate& GetTemplate(TemplateId id);

using TemplateVars = std::map<std::string, std::string, std::less<>>;

// description, signature and entry_point of `task`.
TemplateVars TaskVars(const Task& task);

// Substitutes {{name}} placeholders. Throws Error when a placeholder has no
// value.
std::string RenderTemplate(TemplateId id, const TemplateVars& vars);

struct SamplingParams {
  double temperature = 0.2;
  int max_tokens = 2048;

  bool operator==(const SamplingParams&) const = default;
};

// 0.8 for stub generation and completion (and holistic tests), 0.2 for code
// generation and verification.
SamplingParams DefaultSampling(TemplateId id);

struct GenRequest {
  TemplateId template_id = TemplateId::kBaselineCode;
  std::string rendered_prompt;
  SamplingParams params;
  int sample_index = 0;
  // Retry number for the same logical request; 0 on the first try.
  int attempt = 0;
  std::string model_id;
  // Informational; not part of the cache key (the prompt already embeds the
  // task description).
  std::string task_id;

  // Inputs of the cache key: model, template id and hash, prompt, sampling
  // parameters, sample index, and the attempt when non-zero.
  nlohmann::json KeyMaterial() const;
  std::string CacheKey() const;
};

enum class Origin { kLive, kCache, kMock };
std::string_view ToString(Origin origin);

struct GenResponse {
  std::string text;
  Origin origin = Origin::kMock;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

class CacheMissError : public ProviderError {
 public:
  explicit CacheMissError(std::string key)
      : ProviderError("replay cache has no entry for key " + key),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class Provider {
 public:
  virtual ~Provider() = default;
  // Safe to call concurrently.
  virtual GenResponse Generate(const GenRequest& request) = 0;
};

// A scripted response. Unset fields match anything.
struct MockRule {
  TemplateId template_id = TemplateId::kBaselineCode;
  std::optional<std::string> task_id;
  std::optional<std::string> contains;  // substring of the rendered prompt
  std::optional<int> sample;
  std::optional<int> attempt;
  std::optional<std::uint64_t> seed;
  std::string output;
};

// Ordered rule list; the first matching rule answers. JSON form:
//   {"rules": [{"template": "stub_gen", "task": "t1", "contains": "...",
//               "sample": 0, "attempt": 0, "seed": 7, "output": "..."},
//              {"template": "stub_complete", "outputs": ["a", "b"]}]}
// "outputs" is shorthand for one rule per entry with "sample" = its index.
class MockScript {
 public:
  static MockScript FromJson(const nlohmann::json& j);
  static MockScript Load(const std::filesystem::path& path);
  nlohmann::json ToJson() const;

  void Add(MockRule rule) { rules_.push_back(std::move(rule)); }
  // Inserts ahead of existing rules so it takes precedence.
  void Prepend(MockRule rule) { rules_.insert(rules_.begin(), std::move(rule)); }
  const std::vector<MockRule>& rules() const { return rules_; }

  const MockRule* Find(const GenRequest& request, std::uint64_t seed) const;

 private:
  std::vector<MockRule> rules_;
};

// Deterministic backend: `<digest_dir>/<cache key>.txt` files first, then the
// script.
class MockProvider : public Provider {
 public:
  explicit MockProvider(MockScript script, std::uint64_t seed = 0,
                        std::optional<std::filesystem::path> digest_dir = {});
  GenResponse Generate(const GenRequest& request) override;

 private:
  MockScript script_;
  std::uint64_t seed_;
  std::optional<std::filesystem::path> digest_dir_;
};

// Record/replay cache in `dir/<first two hex chars>/<key>.json` holding
// {request, text, timestamp}. With no upstream it runs replay-only and a miss
// throws CacheMissError. Entries are write-once.
class CachedProvider : public Provider {
 public:
  CachedProvider(std::shared_ptr<Provider> upstream, std::filesystem::path dir);
  GenResponse Generate(const GenRequest& request) override;

  std::filesystem::path EntryPath(const std::string& key) const;

 private:
  std::shared_ptr<Provider> upstream_;
  std::filesystem::path dir_;
};

struct LiveConfig {
  // e.g. "https://api.openai.com/v1"; requests go to <base_url>/chat/completions.
  std::string base_url;
  std::string api_key;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{4000};
  std::chrono::seconds timeout{120};
};

inline constexpr char kApiKeyVariable[] = "CONVERTEST_API_KEY";

// OpenAI-compatible chat-completion backend.
class LiveProvider : public Provider {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit LiveProvider(LiveConfig config, Sleeper sleeper = {});
  GenResponse Generate(const GenRequest& request) override;

  // Request body for `request`, with the sample index (and retry attempt)
  // appended to the prompt as a trailing comment.
  static nlohmann::json RequestBody(const GenRequest& request);

 private:
  LiveConfig config_;
  Sleeper sleeper_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

// Counts requests passing through, per template.
class CountingProvider : public Provider {
 public:
  explicit CountingProvider(std::shared_ptr<Provider> inner)
      : inner_(std::move(inner)) {}
  GenResponse Generate(const GenRequest& request) override;

  int total() const;
  std::map<std::string, int> by_template() const;

 private:
  std::shared_ptr<Provider> inner_;
  mutable std::mutex mu_;
  std::map<std::string, int> counts_;
};

// Content of the first fenced code block, or the whole text trimmed when
// there is none.
std::string ExtractCodeBlock(std::string_view text);

}  // namespace convertest

#endif  // CONVERTEST_PROVIDER_H_
