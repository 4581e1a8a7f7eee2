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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include "httplib.h"
#include "refagent/error.h"
#include "refagent/llm/backends.h"
#include "refagent/llm/chat.h"
#include "refagent/llm/extract.h"
#include "refagent/llm/tokens.h"
#include "refagent/util/files.h"

namespace refagent::llm {
namespace {

namespace fs = std::filesystem;

Request make_request(std::string agent, std::string phase, int attempt, std::string text) {
  Request r;
  r.key = {std::move(agent), std::move(phase), attempt, "bank.Account"};
  r.messages = {{"system", "You refactor Java."}, {"user", std::move(text)}};
  return r;
}

fs::path temp_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("refagent_llm_" + name + "_" +
                                              std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// A local OpenAI-compatible stub. Replies echo the last user message so a
// recorded cassette can be checked against the requests that produced it.
class StubServer {
 public:
  StubServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      last_auth_ = req.get_header_value("Authorization");
      auto body = nlohmann::json::parse(req.body);
      last_body_ = body;
      std::string content = "echo: " + body["messages"].back()["content"].get<std::string>();
      nlohmann::json message = {{"role", "assistant"}, {"content", content}};
      if (body.contains("tools")) {
        message["tool_calls"] = {{{"id", "call_9"},
                                  {"type", "function"},
                                  {"function", {{"name", "code_metrics"},
                                                {"arguments", "{\"fqn\":\"bank.Account\"}"}}}}};
      }
      nlohmann::json reply = {{"id", "cmpl-1"},
                              {"choices", {{{"index", 0}, {"message", message}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    server_.Post("/broken/v1/chat/completions", [](const httplib::Request&, httplib::Response& res) {
      res.status = 503;
      res.set_content("overloaded", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits() const { return hits_; }
  const std::string& last_auth() const { return last_auth_; }
  const nlohmann::json& last_body() const { return last_body_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> hits_{0};
  std::string last_auth_;
  nlohmann::json last_body_;
};

TEST(Tokens, Examples) {
  EXPECT_EQ(estimate_tokens(std::string(400, 'a')), 100);
  EXPECT_EQ(estimate_tokens(""), 0);
  EXPECT_EQ(estimate_tokens(std::string(401, 'a')), 101);
}

TEST(Tokens, MonotoneInLength) {
  std::mt19937 rng(7);
  std::string text;
  long previous = 0;
  for (int i = 0; i < 2000; ++i) {
    text += static_cast<char>('a' + rng() % 26);
    long now = estimate_tokens(text);
    EXPECT_GE(now, previous);
    previous = now;
  }
}

TEST(Scripted, ReturnsMatchingEntryVerbatim) {
  ScriptedBackend backend(nlohmann::json{
      {"entries",
       {{{"agent", "planner"}, {"phase", "plan"}, {"text", "plan text"}},
        {{"agent", "generator"}, {"phase", "initial"}, {"attempt", 1}, {"text", "  code\n"}}}}});
  EXPECT_EQ(backend.complete(make_request("generator", "initial", 1, "go")).text, "  code\n");
  EXPECT_EQ(backend.complete(make_request("planner", "plan", 1, "go")).text, "plan text");
  EXPECT_THROW(backend.complete(make_request("planner", "plan", 1, "go")), PlaybookExhausted);
}

TEST(Scripted, AttemptAndClassKeysFilter) {
  ScriptedBackend backend(nlohmann::json::array({
      {{"agent", "generator"}, {"phase", "compile_fix"}, {"attempt", 3}, {"text", "third"}},
      {{"agent", "generator"}, {"phase", "compile_fix"}, {"class", "other.Type"}, {"text", "x"}},
      {{"agent", "generator"}, {"phase", "compile_fix"}, {"text", "any"}, {"repeat", true}},
  }));
  EXPECT_EQ(backend.complete(make_request("generator", "compile_fix", 2, "")).text, "any");
  EXPECT_EQ(backend.complete(make_request("generator", "compile_fix", 3, "")).text, "third");
  EXPECT_EQ(backend.complete(make_request("generator", "compile_fix", 3, "")).text, "any");
  EXPECT_EQ(backend.complete(make_request("generator", "compile_fix", 4, "")).text, "any");
}

TEST(Scripted, DeterministicTranscripts) {
  nlohmann::json playbook = {{"entries",
                              {{{"agent", "planner"}, {"phase", "plan"}, {"text", "p"}},
                               {{"agent", "generator"}, {"phase", "initial"}, {"text", "g"}}}}};
  auto run = [&] {
    ScriptedBackend backend(playbook);
    Transcript t;
    for (auto [agent, phase] : {std::pair{"planner", "plan"}, std::pair{"generator", "initial"}}) {
      Request r = make_request(agent, phase, 1, "body");
      t.append(r, complete(r, backend, 16384));
    }
    nlohmann::json entries = t.entries();
    for (auto& e : entries) e.erase("timestamp");
    return entries.dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(Replay, UnknownDigestIsReplayMiss) {
  ReplayBackend backend(nlohmann::json{{"interactions", nlohmann::json::array()}});
  Request r = make_request("planner", "plan", 1, "hello");
  try {
    backend.complete(r);
    FAIL() << "expected ReplayMiss";
  } catch (const ReplayMiss& e) {
    EXPECT_EQ(e.subject(), request_digest(r.messages));
  }
}

TEST(Replay, DigestIgnoresWhitespaceLayout) {
  std::vector<ChatMessage> a = {{"user", "class A {\n  int x;\n}"}};
  std::vector<ChatMessage> b = {{"user", "  class A { int x;   }\n\n"}};
  std::vector<ChatMessage> c = {{"system", "class A { int x; }"}};
  EXPECT_EQ(request_digest(a), request_digest(b));
  EXPECT_NE(request_digest(a), request_digest(c));
  EXPECT_EQ(request_digest(a).size(), 64u);
}

TEST(Replay, SameDigestReturnsResponsesInOrderThenRepeatsLast) {
  Request r = make_request("generator", "initial", 1, "same");
  std::string d = request_digest(r.messages);
  ReplayBackend backend(nlohmann::json{
      {"interactions",
       {{{"digest", d}, {"response", {{"text", "one"}}}},
        {{"digest", d}, {"response", {{"text", "two"}}}}}}});
  EXPECT_EQ(backend.complete(r).text, "one");
  EXPECT_EQ(backend.complete(r).text, "two");
  EXPECT_EQ(backend.complete(r).text, "two");
}

TEST(Gateway, RejectsEmptyAndOversizedRequests) {
  ScriptedBackend backend(nlohmann::json::array());
  Request empty;
  EXPECT_THROW(complete(empty, backend, 100), Error);
  Request big = make_request("planner", "plan", 1, std::string(4000, 'x'));
  EXPECT_THROW(complete(big, backend, 1000), ContextOverflow);
}

TEST(Gateway, UndeclaredToolCallIsRejected) {
  ScriptedBackend backend(nlohmann::json::array(
      {{{"agent", "planner"},
        {"phase", "plan"},
        {"repeat", true},
        {"text", ""},
        {"tool_calls", {{{"name", "code_search"}, {"arguments", "{}"}}}}}}));
  Request r = make_request("planner", "plan", 1, "x");
  EXPECT_THROW(complete(r, backend, 16384), BackendError);
  r.tools = {{"code_search", "Fetch source", {{"type", "object"}}}};
  Response ok = complete(r, backend, 16384);
  ASSERT_EQ(ok.tool_calls.size(), 1u);
  EXPECT_EQ(ok.tool_calls[0].id, "call_1");
}

TEST(Config, TemperatureRange) {
  BackendConfig c;
  c.kind = BackendKind::kHttpChat;
  c.temperature = 0.7;
  EXPECT_NO_THROW(c.validate());
  c.temperature = 2.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c.temperature = -0.1;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(backend_kind_from_string("replay"), BackendKind::kReplay);
  EXPECT_THROW(backend_kind_from_string("carrier-pigeon"), ConfigError);
}

TEST(HttpChat, ParsesStubServerResponse) {
  StubServer stub;
  ::setenv("REFAGENT_API_KEY", "sk-test", 1);
  BackendConfig c;
  c.kind = BackendKind::kHttpChat;
  c.endpoint = stub.endpoint();
  c.timeout_seconds = 10;
  HttpChatBackend backend(c);
  ::unsetenv("REFAGENT_API_KEY");
  Response r = backend.complete(make_request("planner", "plan", 1, "ping"));
  EXPECT_EQ(r.text, "echo: ping");
  EXPECT_TRUE(r.tool_calls.empty());
  EXPECT_EQ(stub.last_auth(), "Bearer sk-test");
  EXPECT_EQ(stub.last_body()["model"], "gpt-4o-mini");
  EXPECT_DOUBLE_EQ(stub.last_body()["temperature"].get<double>(), 0.7);
  EXPECT_EQ(stub.last_body()["messages"].size(), 2u);
}

TEST(HttpChat, ToolCallsAreParsed) {
  StubServer stub;
  BackendConfig c;
  c.kind = BackendKind::kHttpChat;
  c.endpoint = stub.endpoint() + "/v1";
  HttpChatBackend backend(c);
  Request req = make_request("planner", "plan", 1, "metrics please");
  req.tools = {{"code_metrics", "Metrics of a class", {{"type", "object"}}}};
  Response r = complete(req, backend, 16384);
  ASSERT_EQ(r.tool_calls.size(), 1u);
  EXPECT_EQ(r.tool_calls[0].id, "call_9");
  EXPECT_EQ(r.tool_calls[0].name, "code_metrics");
  EXPECT_EQ(nlohmann::json::parse(r.tool_calls[0].arguments)["fqn"], "bank.Account");
  EXPECT_EQ(stub.last_body()["tools"][0]["function"]["name"], "code_metrics");
}

TEST(HttpChat, HttpAndTransportFailuresAreBackendErrors) {
  StubServer stub;
  BackendConfig c;
  c.kind = BackendKind::kHttpChat;
  c.endpoint = stub.endpoint() + "/broken";
  HttpChatBackend broken(c);
  try {
    broken.complete(make_request("planner", "plan", 1, "x"));
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.status(), 503);
    EXPECT_EQ(e.body(), "overloaded");
  }
  c.endpoint = "http://127.0.0.1:1";
  c.timeout_seconds = 2;
  HttpChatBackend unreachable(c);
  try {
    unreachable.complete(make_request("planner", "plan", 1, "x"));
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.status(), 0);
  }
}

TEST(RecordReplay, RoundTripHasNoMisses) {
  StubServer stub;
  fs::path dir = temp_dir("cassette");
  fs::path cassette = dir / "session.json";
  BackendConfig c;
  c.kind = BackendKind::kHttpChat;
  c.endpoint = stub.endpoint();
  c.record_path = cassette;
  std::vector<Request> session = {make_request("planner", "plan", 1, "plan Account"),
                                  make_request("generator", "initial", 1, "write Account"),
                                  make_request("generator", "compile_fix", 2, "fix line 4")};
  std::vector<Response> live;
  {
    auto recorder = make_backend(c);
    for (const auto& r : session) live.push_back(recorder->complete(r));
  }
  EXPECT_EQ(stub.hits(), 3);

  BackendConfig rc;
  rc.kind = BackendKind::kReplay;
  rc.playbook_path = cassette;
  auto replay = make_backend(rc);
  for (std::size_t i = 0; i < session.size(); ++i) {
    EXPECT_EQ(replay->complete(session[i]), live[i]);
  }
  EXPECT_EQ(stub.hits(), 3);
  fs::remove_all(dir);
}

TEST(Extract, CodeBlockRules) {
  EXPECT_EQ(extract_code_block("```java\nclass A {}\n```"), "class A {}");
  EXPECT_EQ(extract_code_block("Here:\n```text\nnotes\n```\nand\n```java\n\nclass B {}\n\n```\n"),
            "class B {}");
  EXPECT_EQ(extract_code_block("```java\nclass C {}\n```\n```\nplain\n```"), "class C {}");
  EXPECT_EQ(extract_code_block("```\nuntagged\n```"), "untagged");
  EXPECT_EQ(extract_code_block("```Java\nclass D {}\n```"), "class D {}");
  EXPECT_THROW(extract_code_block("just prose, no code"), NoCodeBlock);
  EXPECT_THROW(extract_code_block("```java\nunterminated"), NoCodeBlock);
}

TEST(Extract, PlanWithOneEntry) {
  RefactoringPlan p = extract_plan(
      "Plan follows.\n```json\n[{\"region_kind\": \"method\", \"identifier\": \"deposit\","
      " \"line_range\": [4, 12], \"refactoring_type\": \"Extract Method\","
      " \"instruction\": \"Move validation into validateAmount\"}]\n```",
      "bank.Account");
  EXPECT_EQ(p.target_fqn, "bank.Account");
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries[0].region_kind, RegionKind::kMethod);
  EXPECT_EQ(p.entries[0].identifier, "deposit");
  EXPECT_EQ(p.entries[0].line_range, (source::LineRange{4, 12}));
  EXPECT_EQ(p.entries[0].refactoring_type, "Extract Method");
}

TEST(Extract, PlanKeepsUnknownRefactoringTypeAndAcceptsObjectForm) {
  RefactoringPlan p = extract_plan(
      "```\n{\"entries\": [{\"region_kind\": \"field\", \"identifier\": \"balance\","
      " \"refactoring_type\": \"Frobnicate Field\", \"instruction\": \"do it\"}]}\n```");
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries[0].refactoring_type, "Frobnicate Field");
  EXPECT_FALSE(p.entries[0].line_range.has_value());
  auto again = plan_from_json(to_json(p));
  EXPECT_EQ(again.entries, p.entries);
}

TEST(Extract, PlanErrors) {
  EXPECT_THROW(extract_plan("```json\n[{\"region_kind\": \"package\", \"identifier\": \"x\","
                            " \"refactoring_type\": \"Move\", \"instruction\": \"i\"}]\n```"),
               PlanParseError);
  EXPECT_THROW(extract_plan("no fence here"), PlanParseError);
  EXPECT_THROW(extract_plan("```java\nclass A {}\n```"), PlanParseError);
  EXPECT_THROW(extract_plan("```json\n[{\"region_kind\": \"method\"}]\n```"), PlanParseError);
  EXPECT_THROW(extract_plan("```json\n{not json}\n```"), PlanParseError);
  EXPECT_THROW(extract_plan("```json\n[{\"region_kind\": \"method\", \"identifier\": \"m\","
                            " \"line_range\": [9, 3], \"refactoring_type\": \"Move\","
                            " \"instruction\": \"i\"}]\n```"),
               PlanParseError);
}

TEST(Extract, LastJsonFenceWins) {
  RefactoringPlan p = extract_plan(
      "```json\n[]\n```\nrevised:\n```json\n[{\"region_kind\": \"class\", \"identifier\": "
      "\"Account\", \"refactoring_type\": \"Extract Class\", \"instruction\": \"split\"}]\n```");
  EXPECT_EQ(p.entries.size(), 1u);
}

}  // namespace
}  // namespace refagent::llm
