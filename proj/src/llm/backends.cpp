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

#include "refagent/llm/backends.h"

#include <cstdlib>

#include "httplib.h"
#include "refagent/error.h"
#include "refagent/util/files.h"

namespace refagent::llm {

namespace {

nlohmann::json load_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(util::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::string describe(const RequestKey& key) {
  return key.agent + "/" + key.phase + "/" + std::to_string(key.attempt) +
         (key.class_fqn.empty() ? "" : " for " + key.class_fqn);
}

}  // namespace

void BackendConfig::validate() const {
  if (!(temperature >= 0 && temperature <= 2)) {
    throw ConfigError("temperature must be within [0, 2], got " + std::to_string(temperature));
  }
  if ((kind == BackendKind::kScripted || kind == BackendKind::kReplay) && playbook_path.empty()) {
    throw ConfigError(std::string(to_string(kind)) + " backend needs a playbook/cassette path");
  }
  if (context_window < 1) throw ConfigError("context window must be positive");
}

BackendKind backend_kind_from_string(const std::string& s) {
  if (s == "scripted") return BackendKind::kScripted;
  if (s == "replay") return BackendKind::kReplay;
  if (s == "http" || s == "http_chat") return BackendKind::kHttpChat;
  throw ConfigError("unknown backend '" + s + "'");
}

const char* to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kScripted: return "scripted";
    case BackendKind::kReplay: return "replay";
    case BackendKind::kHttpChat: return "http";
  }
  return "scripted";
}

ScriptedBackend::ScriptedBackend(const nlohmann::json& playbook) {
  const nlohmann::json& entries = playbook.is_array() ? playbook : playbook.at("entries");
  for (const auto& e : entries) {
    Entry entry;
    entry.agent = e.at("agent").get<std::string>();
    entry.phase = e.at("phase").get<std::string>();
    if (e.contains("attempt")) entry.attempt = e.at("attempt").get<int>();
    if (e.contains("class")) entry.class_fqn = e.at("class").get<std::string>();
    entry.response = response_from_json(e);
    entry.repeat = e.value("repeat", false);
    entries_.push_back(std::move(entry));
  }
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::load(const std::filesystem::path& path) {
  try {
    return std::make_unique<ScriptedBackend>(load_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Response ScriptedBackend::complete(const Request& request) {
  std::lock_guard<std::mutex> lock(mu_);
  const RequestKey& key = request.key;
  for (auto& e : entries_) {
    if (e.consumed || e.agent != key.agent || e.phase != key.phase) continue;
    if (e.attempt && *e.attempt != key.attempt) continue;
    if (e.class_fqn && *e.class_fqn != key.class_fqn) continue;
    if (!e.repeat) e.consumed = true;
    Response r = e.response;
    for (std::size_t i = 0; i < r.tool_calls.size(); ++i) {
      if (r.tool_calls[i].id.empty()) r.tool_calls[i].id = "call_" + std::to_string(i + 1);
    }
    return r;
  }
  throw PlaybookExhausted(describe(key));
}

ReplayBackend::ReplayBackend(const nlohmann::json& cassette) {
  for (const auto& i : cassette.at("interactions")) {
    queues_[i.at("digest").get<std::string>()].push_back(response_from_json(i.at("response")));
  }
}

std::unique_ptr<ReplayBackend> ReplayBackend::load(const std::filesystem::path& path) {
  try {
    return std::make_unique<ReplayBackend>(load_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Response ReplayBackend::complete(const Request& request) {
  std::lock_guard<std::mutex> lock(mu_);
  const std::string digest = request_digest(request.messages);
  auto it = queues_.find(digest);
  if (it == queues_.end() || it->second.empty()) throw ReplayMiss(digest);
  Response r = it->second.front();
  if (it->second.size() > 1) it->second.pop_front();
  return r;
}

RecordingBackend::RecordingBackend(std::unique_ptr<Backend> inner, std::filesystem::path cassette)
    : inner_(std::move(inner)), cassette_(std::move(cassette)) {}

Response RecordingBackend::complete(const Request& request) {
  Response r = inner_->complete(request);
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) messages.push_back(to_json(m));
  interactions_.push_back({{"digest", request_digest(request.messages)},
                           {"request", {{"messages", messages}}},
                           {"response", to_json(r)}});
  util::write_file(cassette_, nlohmann::json{{"interactions", interactions_}}.dump(2) + "\n");
  return r;
}

HttpChatBackend::HttpChatBackend(BackendConfig config) : config_(std::move(config)) {
  if (const char* key = std::getenv("REFAGENT_API_KEY")) api_key_ = key;
}

Response HttpChatBackend::complete(const Request& request) {
  std::string endpoint = config_.endpoint;
  while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();
  std::string path = "/v1/chat/completions";
  // Split "scheme://host[:port][/prefix]".
  auto scheme_end = endpoint.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = endpoint.find('/', host_start);
  std::string base = endpoint;
  if (path_start != std::string::npos) {
    std::string prefix = endpoint.substr(path_start);
    base = endpoint.substr(0, path_start);
    path = prefix.ends_with("/chat/completions") ? prefix
           : prefix.ends_with("/v1")             ? prefix + "/chat/completions"
                                                 : prefix + path;
  }

  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) {
    nlohmann::json j = {{"role", m.role}, {"content", m.content}};
    if (!m.tool_calls.empty()) {
      nlohmann::json calls = nlohmann::json::array();
      for (const auto& c : m.tool_calls) {
        calls.push_back({{"id", c.id},
                         {"type", "function"},
                         {"function", {{"name", c.name}, {"arguments", c.arguments}}}});
      }
      j["tool_calls"] = calls;
    }
    if (!m.tool_call_id.empty()) j["tool_call_id"] = m.tool_call_id;
    messages.push_back(std::move(j));
  }
  nlohmann::json body = {{"model", config_.model},
                         {"messages", messages},
                         {"temperature", request.temperature}};
  int max_tokens = request.max_output_tokens ? request.max_output_tokens : config_.max_output_tokens;
  if (max_tokens > 0) body["max_tokens"] = max_tokens;
  if (!request.tools.empty()) {
    nlohmann::json tools = nlohmann::json::array();
    for (const auto& t : request.tools) {
      tools.push_back({{"type", "function"},
                       {"function",
                        {{"name", t.name},
                         {"description", t.description},
                         {"parameters", t.parameters}}}});
    }
    body["tools"] = tools;
  }

  httplib::Client client(base);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw BackendError(0, "transport failure: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) throw BackendError(res->status, res->body);

  try {
    nlohmann::json reply = nlohmann::json::parse(res->body);
    const nlohmann::json& message = reply.at("choices").at(0).at("message");
    Response out;
    if (message.contains("content") && message.at("content").is_string()) {
      out.text = message.at("content").get<std::string>();
    }
    if (message.contains("tool_calls") && message.at("tool_calls").is_array()) {
      for (const auto& c : message.at("tool_calls")) {
        const auto& fn = c.at("function");
        const auto& args = fn.contains("arguments") ? fn.at("arguments") : nlohmann::json("{}");
        out.tool_calls.push_back({c.value("id", ""), fn.at("name").get<std::string>(),
                                  args.is_string() ? args.get<std::string>() : args.dump()});
      }
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(res->status, std::string("malformed completion: ") + e.what());
  }
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  config.validate();
  std::unique_ptr<Backend> backend;
  switch (config.kind) {
    case BackendKind::kScripted: backend = ScriptedBackend::load(config.playbook_path); break;
    case BackendKind::kReplay: backend = ReplayBackend::load(config.playbook_path); break;
    case BackendKind::kHttpChat: backend = std::make_unique<HttpChatBackend>(config); break;
  }
  if (!config.record_path.empty()) {
    backend = std::make_unique<RecordingBackend>(std::move(backend), config.record_path);
  }
  return backend;
}

}  // namespace refagent::llm
