// Copyright 2026 The RefAgent Authors
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

#ifndef REFAGENT_LLM_TOKENS_H_
#define REFAGENT_LLM_TOKENS_H_

#include <string_view>

namespace refagent::llm {

/// Token estimate used for every budget decision: ceil(characters / 4),
/// where characters are UTF-8 code points.
long estimate_tokens(std::string_view text);

}  // namespace refagent::llm

#endif  // REFAGENT_LLM_TOKENS_H_
