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

#ifndef REFAGENT_LLM_BACKENDS_H_
#define REFAGENT_LLM_BACKENDS_H_

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "refagent/llm/chat.h"

namespace refagent::llm {

enum class BackendKind { kHttpChat, kScripted, kReplay };

struct BackendConfig {
  BackendKind kind = BackendKind::kScripted;
  std::string endpoint = "http://localhost:8000";
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
  int max_output_tokens = 0;
  long context_window = 16384;
  int timeout_seconds = 300;
  std::filesystem::path playbook_path;  // playbook (scripted) or cassette (replay)
  /// When set, every exchange is also written to this cassette.
  std::filesystem::path record_path;

  /// Throws ConfigError on an out-of-range temperature or missing paths.
  void validate() const;
};

BackendKind backend_kind_from_string(const std::string& s);
const char* to_string(BackendKind kind);

/// Plays back a JSON playbook:
///   {"entries": [{"agent", "phase", "attempt"?, "class"?, "text",
///                 "tool_calls"?: [{"id"?, "name", "arguments"}], "repeat"?}]}
/// Each request takes the first unconsumed entry matching its agent and
/// phase (and attempt/class when the entry names them). Entries marked
/// `repeat` are never consumed.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(const nlohmann::json& playbook);
  static std::unique_ptr<ScriptedBackend> load(const std::filesystem::path& path);
  Response complete(const Request& request) override;

 private:
  struct Entry {
    std::string agent;
    std::string phase;
    std::optional<int> attempt;
    std::optional<std::string> class_fqn;
    Response response;
    bool repeat = false;
    bool consumed = false;
  };
  std::mutex mu_;
  std::vector<Entry> entries_;
};

/// Replays a cassette: {"interactions": [{"digest", "request", "response"}]}.
/// Responses for the same digest are returned in order; the last one
/// repeats. Unknown digests raise ReplayMiss.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(const nlohmann::json& cassette);
  static std::unique_ptr<ReplayBackend> load(const std::filesystem::path& path);
  Response complete(const Request& request) override;

 private:
  std::mutex mu_;
  std::map<std::string, std::deque<Response>> queues_;
};

/// Forwards to another backend and appends each exchange to a cassette
/// file, rewritten after every call.
class RecordingBackend : public Backend {
 public:
  RecordingBackend(std::unique_ptr<Backend> inner, std::filesystem::path cassette);
  Response complete(const Request& request) override;

 private:
  std::mutex mu_;
  std::unique_ptr<Backend> inner_;
  std::filesystem::path cassette_;
  nlohmann::json interactions_ = nlohmann::json::array();
};

/// OpenAI-compatible POST <endpoint>/v1/chat/completions. The API key is
/// read from REFAGENT_API_KEY; the first choice is returned.
class HttpChatBackend : public Backend {
 public:
  explicit HttpChatBackend(BackendConfig config);
  Response complete(const Request& request) override;

 private:
  BackendConfig config_;
  std::string api_key_;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config);

}  // namespace refagent::llm

#endif  // REFAGENT_LLM_BACKENDS_H_
