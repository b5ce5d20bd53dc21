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

#ifndef CONVERTEST_GENERATION_H_
#define CONVERTEST_GENERATION_H_

#include <map>
#include <string>

#include "convertest/provider.h"

namespace convertest {

// Settings shared by test and code generation.
struct GenerationOptions {
  std::string model_id = "mock";
  // Overrides DefaultSampling per template.
  std::map<TemplateId, SamplingParams> sampling;

  SamplingParams Params(TemplateId id) const {
    auto it = sampling.find(id);
    return it == sampling.end() ? DefaultSampling(id) : it->second;
  }

  GenRequest Request(TemplateId id, const Task& task, const TemplateVars& vars,
                     int sample_index, int attempt = 0) const {
    GenRequest r;
    r.template_id = id;
    r.rendered_prompt = RenderTemplate(id, vars);
    r.params = Params(id);
    r.sample_index = sample_index;
    r.attempt = attempt;
    r.model_id = model_id;
    r.task_id = task.task_id;
    return r;
  }
};

}  // namespace convertest

#endif  // CONVERTEST_GENERATION_H_
