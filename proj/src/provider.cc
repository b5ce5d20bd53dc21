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

#include "convertest/provider.h"

#include <algorithm>
#include <cctype>

#include "convertest/digest.h"
#include "convertest/file_util.h"
#include "templates_data.h"

namespace convertest {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<PromptTemplate> LoadTemplates() {
  std::vector<PromptTemplate> out;
  for (TemplateId id : kAllTemplates) {
    const auto& embedded = internal::EmbeddedTemplates();
    auto it = std::find_if(embedded.begin(), embedded.end(),
                           [&](const internal::EmbeddedTemplate& t) {
                             return t.name == ToString(id);
                           });
    if (it == embedded.end()) {
      throw Error("prompt template missing: " + std::string(ToString(id)));
    }
    out.push_back(PromptTemplate{id, it->text, Sha256Hex(it->text)});
  }
  return out;
}

}  // namespace

std::string_view ToString(TemplateId id) {
  switch (id) {
    case TemplateId::kStubGen: return "stub_gen";
    case TemplateId::kStubComplete: return "stub_complete";
    case TemplateId::kHolisticTest: return "holistic_test";
    case TemplateId::kBaselineCode: return "baseline_code";
    case TemplateId::kVerifyPlan: return "verify_plan";
    case TemplateId::kVerifyAnswer: return "verify_answer";
    case TemplateId::kGuidedRegen: return "guided_regen";
  }
  return "?";
}

TemplateId ParseTemplateId(std::string_view s) {
  for (TemplateId id : kAllTemplates) {
    if (ToString(id) == s) return id;
  }
  throw Error("unknown template id '" + std::string(s) + "'");
}

std::string_view ToString(Origin origin) {
  switch (origin) {
    case Origin::kLive: return "live";
    case Origin::kCache: return "cache";
    case Origin::kMock: return "mock";
  }
  return "?";
}

const PromptTemplate& GetTemplate(TemplateId id) {
  static const std::vector<PromptTemplate> kTemplates = LoadTemplates();
  return kTemplates.at(static_cast<std::size_t>(id));
}

TemplateVars TaskVars(const Task& task) {
  return {{"description", task.description},
          {"signature", task.signature},
          {"entry_point", task.entry_point}};
}

std::string RenderTemplate(TemplateId id, const TemplateVars& vars) {
  const std::string_view text = GetTemplate(id).text;
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    const std::string_view name = text.substr(open + 2, close - open - 2);
    auto it = vars.find(name);
    if (it == vars.end()) {
      throw Error("template " + std::string(ToString(id)) +
                  " needs a value for {{" + std::string(name) + "}}");
    }
    out.append(text.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 2;
  }
  out.append(text.substr(pos));
  return out;
}

SamplingParams DefaultSampling(TemplateId id) {
  switch (id) {
    case TemplateId::kStubGen:
    case TemplateId::kStubComplete:
    case TemplateId::kHolisticTest:
      return SamplingParams{0.8, 2048};
    default:
      return SamplingParams{0.2, 2048};
  }
}

nlohmann::json GenRequest::KeyMaterial() const {
  nlohmann::json j = {
      {"model", model_id},
      {"template", ToString(template_id)},
      {"template_hash", GetTemplate(template_id).hash},
      {"prompt", rendered_prompt},
      {"temperature", params.temperature},
      {"max_tokens", params.max_tokens},
      {"sample_index", sample_index},
  };
  if (attempt != 0) j["attempt"] = attempt;
  return j;
}

std::string GenRequest::CacheKey() const {
  return Sha256Hex(KeyMaterial().dump());
}

MockScript MockScript::FromJson(const nlohmann::json& j) {
  MockScript script;
  if (!j.contains("rules") || !j["rules"].is_array()) {
    throw Error("mock script needs a \"rules\" array");
  }
  for (const auto& r : j["rules"]) {
    MockRule base;
    base.template_id = ParseTemplateId(r.at("template").get<std::string>());
    if (r.contains("task")) base.task_id = r["task"].get<std::string>();
    if (r.contains("contains")) base.contains = r["contains"].get<std::string>();
    if (r.contains("sample")) base.sample = r["sample"].get<int>();
    if (r.contains("attempt")) base.attempt = r["attempt"].get<int>();
    if (r.contains("seed")) base.seed = r["seed"].get<std::uint64_t>();
    if (r.contains("outputs")) {
      const auto& outputs = r["outputs"];
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        MockRule rule = base;
        rule.sample = static_cast<int>(i);
        rule.output = outputs[i].get<std::string>();
        script.Add(std::move(rule));
      }
    } else {
      base.output = r.at("output").get<std::string>();
      script.Add(std::move(base));
    }
  }
  return script;
}

MockScript MockScript::Load(const std::filesystem::path& path) {
  try {
    return FromJson(nlohmann::json::parse(ReadFile(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid mock script " + path.string() + ": " + e.what());
  }
}

nlohmann::json MockScript::ToJson() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const MockRule& r : rules_) {
    nlohmann::json j = {{"template", ToString(r.template_id)},
                        {"output", r.output}};
    if (r.task_id) j["task"] = *r.task_id;
    if (r.contains) j["contains"] = *r.contains;
    if (r.sample) j["sample"] = *r.sample;
    if (r.attempt) j["attempt"] = *r.attempt;
    if (r.seed) j["seed"] = *r.seed;
    rules.push_back(std::move(j));
  }
  return {{"rules", rules}};
}

const MockRule* MockScript::Find(const GenRequest& request,
                                 std::uint64_t seed) const {
  for (const MockRule& r : rules_) {
    if (r.template_id != request.template_id) continue;
    if (r.task_id && *r.task_id != request.task_id) continue;
    if (r.sample && *r.sample != request.sample_index) continue;
    if (r.attempt && *r.attempt != request.attempt) continue;
    if (r.seed && *r.seed != seed) continue;
    if (r.contains &&
        request.rendered_prompt.find(*r.contains) == std::string::npos) {
      continue;
    }
    return &r;
  }
  return nullptr;
}

MockProvider::MockProvider(MockScript script, std::uint64_t seed,
                           std::optional<std::filesystem::path> digest_dir)
    : script_(std::move(script)), seed_(seed), digest_dir_(std::move(digest_dir)) {}

GenResponse MockProvider::Generate(const GenRequest& request) {
  const std::string key = request.CacheKey();
  if (digest_dir_) {
    const auto path = *digest_dir_ / (key + ".txt");
    if (std::filesystem::exists(path)) {
      return GenResponse{ReadFile(path), Origin::kMock};
    }
  }
  if (const MockRule* rule = script_.Find(request, seed_)) {
    return GenResponse{rule->output, Origin::kMock};
  }
  throw ProviderError("mock has no response for template=" +
                      std::string(ToString(request.template_id)) +
                      " task=" + request.task_id +
                      " sample=" + std::to_string(request.sample_index) +
                      " attempt=" + std::to_string(request.attempt) +
                      " key=" + key);
}

CachedProvider::CachedProvider(std::shared_ptr<Provider> upstream,
                               std::filesystem::path dir)
    : upstream_(std::move(upstream)), dir_(std::move(dir)) {}

std::filesystem::path CachedProvider::EntryPath(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

GenResponse CachedProvider::Generate(const GenRequest& request) {
  const std::string key = request.CacheKey();
  const auto path = EntryPath(key);
  if (std::filesystem::exists(path)) {
    try {
      auto entry = nlohmann::json::parse(ReadFile(path));
      return GenResponse{entry.at("text").get<std::string>(), Origin::kCache};
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError("corrupt cache entry " + path.string() + ": " +
                          e.what());
    }
  }
  if (!upstream_) throw CacheMissError(key);
  GenResponse response = upstream_->Generate(request);
  nlohmann::json entry = {{"request", request.KeyMaterial()},
                          {"text", response.text},
                          {"timestamp", UtcTimestamp()}};
  entry["request"]["task_id"] = request.task_id;
  if (!std::filesystem::exists(path)) WriteFileAtomic(path, entry.dump(2));
  return response;
}

GenResponse CountingProvider::Generate(const GenRequest& request) {
  {
    std::lock_guard lock(mu_);
    ++counts_[std::string(ToString(request.template_id))];
  }
  return inner_->Generate(request);
}

int CountingProvider::total() const {
  std::lock_guard lock(mu_);
  int n = 0;
  for (const auto& [name, count] : counts_) n += count;
  return n;
}

std::map<std::string, int> CountingProvider::by_template() const {
  std::lock_guard lock(mu_);
  return counts_;
}

std::string ExtractCodeBlock(std::string_view text) {
  const std::size_t open = text.find("```");
  if (open == std::string_view::npos) return Trim(text);
  std::size_t body = text.find('\n', open);
  if (body == std::string_view::npos) return "";
  ++body;
  std::size_t close = text.find("```", body);
  if (close == std::string_view::npos) close = text.size();
  std::string_view block = text.substr(body, close - body);
  // Leading blank lines and trailing whitespace go; indentation stays.
  while (!block.empty()) {
    const std::size_t nl = block.find('\n');
    if (nl == std::string_view::npos ||
        block.substr(0, nl).find_first_not_of(" \t\r") !=
            std::string_view::npos) {
      break;
    }
    block.remove_prefix(nl + 1);
  }
  while (!block.empty() && std::isspace(static_cast<unsigned char>(block.back()))) {
    block.remove_suffix(1);
  }
  return std::string(block);
}

}  // namespace convertest
