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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <thread>

#include "convertest/provider.h"

namespace convertest {
namespace {

bool Retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

LiveProvider::LiveProvider(LiveConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  if (config_.api_key.empty()) {
    throw PreconditionError(std::string("live provider needs an API key in ") +
                            kApiKeyVariable);
  }
  if (config_.max_attempts < 1) {
    throw PreconditionError("live provider needs max_attempts >= 1");
  }
  const std::string& url = config_.base_url;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw PreconditionError("base URL needs a scheme: " + url);
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') {
    path_prefix_.pop_back();
  }
}

nlohmann::json LiveProvider::RequestBody(const GenRequest& request) {
  std::string content = request.rendered_prompt;
  content += "\n\n# sample " + std::to_string(request.sample_index);
  if (request.attempt != 0) {
    content += " attempt " + std::to_string(request.attempt);
  }
  return {{"model", request.model_id},
          {"messages", nlohmann::json::array(
                           {{{"role", "user"}, {"content", content}}})},
          {"temperature", request.params.temperature},
          {"max_tokens", request.params.max_tokens}};
}

GenResponse LiveProvider::Generate(const GenRequest& request) {
  const std::string body = RequestBody(request).dump();
  const std::string path = path_prefix_ + "/chat/completions";
  httplib::Headers headers = {{"Authorization", "Bearer " + config_.api_key}};
  std::chrono::milliseconds backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    auto result = client.Post(path, headers, body, "application/json");
    if (result && result->status == 200) {
      try {
        auto reply = nlohmann::json::parse(result->body);
        std::string text = reply.at("choices")
                               .at(0)
                               .at("message")
                               .at("content")
                               .get<std::string>();
        if (text.empty()) throw ProviderError("empty completion");
        return GenResponse{std::move(text), Origin::kLive};
      } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed completion response: ") +
                            e.what());
      }
    }
    if (result) {
      last_error = "HTTP " + std::to_string(result->status);
      if (!Retryable(result->status)) break;
    } else {
      last_error = "transport failure: " + httplib::to_string(result.error());
    }
    if (attempt < config_.max_attempts) {
      sleeper_(backoff);
      backoff = std::min(backoff * 2, config_.max_backoff);
    }
  }
  throw ProviderError("completion request to " + scheme_host_port_ + path +
                      " failed: " + last_error);
}

}  // namespace convertest
