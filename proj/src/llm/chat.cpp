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

#include "refagent/llm/chat.h"

#include <cctype>
#include <set>

#include "refagent/error.h"
#include "refagent/llm/tokens.h"
#include "refagent/util/files.h"

namespace refagent::llm {

namespace {

std::string normalize_whitespace(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

nlohmann::json tool_calls_json(const std::vector<ToolCall>& calls) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : calls) {
    out.push_back({{"id", c.id}, {"name", c.name}, {"arguments", c.arguments}});
  }
  return out;
}

std::vector<ToolCall> tool_calls_from(const nlohmann::json& j) {
  std::vector<ToolCall> out;
  if (!j.is_array()) return out;
  for (const auto& c : j) {
    ToolCall call;
    call.id = c.value("id", "");
    call.name = c.at("name").get<std::string>();
    const auto& args = c.contains("arguments") ? c.at("arguments") : nlohmann::json::object();
    call.arguments = args.is_string() ? args.get<std::string>() : args.dump();
    out.push_back(std::move(call));
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const ChatMessage& m) {
  nlohmann::json j = {{"role", m.role}, {"content", m.content}};
  if (!m.tool_calls.empty()) j["tool_calls"] = tool_calls_json(m.tool_calls);
  if (!m.tool_call_id.empty()) j["tool_call_id"] = m.tool_call_id;
  return j;
}

ChatMessage message_from_json(const nlohmann::json& j) {
  ChatMessage m;
  m.role = j.at("role").get<std::string>();
  m.content = j.value("content", "");
  if (j.contains("tool_calls")) m.tool_calls = tool_calls_from(j.at("tool_calls"));
  m.tool_call_id = j.value("tool_call_id", "");
  return m;
}

nlohmann::json to_json(const Response& r) {
  return {{"text", r.text}, {"tool_calls", tool_calls_json(r.tool_calls)}};
}

Response response_from_json(const nlohmann::json& j) {
  Response r;
  r.text = j.value("text", "");
  if (j.contains("tool_calls")) r.tool_calls = tool_calls_from(j.at("tool_calls"));
  return r;
}

nlohmann::json to_json(const Request& r) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : r.messages) messages.push_back(to_json(m));
  nlohmann::json tools = nlohmann::json::array();
  for (const auto& t : r.tools) tools.push_back(t.name);
  return {{"key",
           {{"agent", r.key.agent},
            {"phase", r.key.phase},
            {"attempt", r.key.attempt},
            {"class", r.key.class_fqn}}},
          {"temperature", r.temperature},
          {"tools", tools},
          {"messages", messages}};
}

std::string request_digest(const std::vector<ChatMessage>& messages) {
  std::string canonical;
  for (const auto& m : messages) {
    canonical += m.role;
    canonical += '\x1f';
    canonical += normalize_whitespace(m.content);
    canonical += '\x1e';
  }
  return util::sha256_hex(canonical);
}

long estimate_prompt_tokens(const Request& request) {
  long total = 0;
  for (const auto& m : request.messages) total += estimate_tokens(m.content);
  for (const auto& t : request.tools) {
    total += estimate_tokens(t.name) + estimate_tokens(t.description) +
             estimate_tokens(t.parameters.dump());
  }
  return total;
}

Response complete(const Request& request, Backend& backend, long context_window) {
  if (request.messages.empty()) throw Error("chat request has no messages");
  long tokens = estimate_prompt_tokens(request);
  if (tokens > context_window) throw ContextOverflow(tokens, context_window);
  Response response = backend.complete(request);
  std::set<std::string> declared;
  for (const auto& t : request.tools) declared.insert(t.name);
  for (const auto& call : response.tool_calls) {
    if (!declared.count(call.name)) {
      throw BackendError(0, "response calls undeclared tool '" + call.name + "'");
    }
  }
  return response;
}

void Transcript::append(const Request& request, const Response& response) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({{"timestamp", util::utc_timestamp()},
                      {"request", to_json(request)},
                      {"response", to_json(response)},
                      {"prompt_tokens", estimate_prompt_tokens(request)},
                      {"response_tokens", estimate_tokens(response.text)}});
}

}  // namespace refagent::llm
