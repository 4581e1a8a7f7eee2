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

#ifndef REFAGENT_LLM_CHAT_H_
#define REFAGENT_LLM_CHAT_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace refagent::llm {

struct ToolCall {
  std::string id;
  std::string name;
  std::string arguments;  // JSON text
  friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

struct ChatMessage {
  std::string role;  // system, user, assistant, tool
  std::string content;
  std::vector<ToolCall> tool_calls = {};  // assistant messages only
  std::string tool_call_id = {};         // tool messages only
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ToolSpec {
  std::string name;
  std::string description;
  nlohmann::json parameters = nlohmann::json::object();  // JSON schema
};

/// Identifies the call site for scripted playback.
struct RequestKey {
  std::string agent;  // planner, generator, compiler, tester
  std::string phase;  // plan, initial, compile_fix, test_fix, summarize
  int attempt = 1;
  std::string class_fqn;
};

struct Request {
  std::vector<ChatMessage> messages;
  std::vector<ToolSpec> tools;
  double temperature = 0.7;
  int max_output_tokens = 0;  // 0: backend default
  RequestKey key;
};

struct Response {
  std::string text;
  std::vector<ToolCall> tool_calls;
  friend bool operator==(const Response&, const Response&) = default;
};

nlohmann::json to_json(const ChatMessage& m);
ChatMessage message_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Response& r);
Response response_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Request& r);

/// SHA-256 over the (role, content) sequence with whitespace runs collapsed
/// and ends trimmed, so cosmetic reformatting keeps cassettes valid.
std::string request_digest(const std::vector<ChatMessage>& messages);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual Response complete(const Request& request) = 0;
};

/// Tokens of every message content plus the serialized tool specs.
long estimate_prompt_tokens(const Request& request);

/// Validates the request (non-empty, within `context_window` tokens), calls
/// the backend and checks that every returned tool call names a declared
/// tool. Throws ContextOverflow or BackendError.
Response complete(const Request& request, Backend& backend, long context_window);

/// Append-only record of one session's exchanges.
class Transcript {
 public:
  void append(const Request& request, const Response& response);
  const nlohmann::json& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  mutable std::mutex mu_;
  nlohmann::json entries_ = nlohmann::json::array();
};

}  // namespace refagent::llm

#endif  // REFAGENT_LLM_CHAT_H_
