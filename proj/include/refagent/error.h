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

#ifndef REFAGENT_ERROR_H_
#define REFAGENT_ERROR_H_

#include <stdexcept>
#include <string>

namespace refagent {

/// Root of every domain error the engine raises. The CLI maps these to exit
/// code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, std::string message)
      : Error("line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(std::move(message)) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  ParseError& at_column(int column) {
    column_ = column;
    return *this;
  }

 private:
  int line_;
  int column_ = 0;
  std::string message_;
};

/// Errors that only carry a subject (an FQN, a digest, a path).
class SubjectError : public Error {
 public:
  SubjectError(const std::string& what, std::string subject)
      : Error(what + ": " + subject), subject_(std::move(subject)) {}
  const std::string& subject() const { return subject_; }

 private:
  std::string subject_;
};

#define REFAGENT_SUBJECT_ERROR(Name, Label)                   \
  class Name : public SubjectError {                          \
   public:                                                    \
    explicit Name(std::string subject)                        \
        : SubjectError(Label, std::move(subject)) {}          \
  }

REFAGENT_SUBJECT_ERROR(DuplicateType, "duplicate type");
REFAGENT_SUBJECT_ERROR(UnknownType, "unknown type");
REFAGENT_SUBJECT_ERROR(CyclicHierarchy, "cyclic inheritance involving");
REFAGENT_SUBJECT_ERROR(TargetOverBudget, "target exceeds token budget");
REFAGENT_SUBJECT_ERROR(UnknownMetricName, "unknown metric name");
REFAGENT_SUBJECT_ERROR(ReplayMiss, "no recorded response for request digest");
REFAGENT_SUBJECT_ERROR(PlaybookExhausted, "playbook has no entry for");
REFAGENT_SUBJECT_ERROR(ToolError, "build tool failure");
REFAGENT_SUBJECT_ERROR(GeneratorUnavailable, "test generator unavailable");
REFAGENT_SUBJECT_ERROR(BaselineFailure, "baseline check failed");
REFAGENT_SUBJECT_ERROR(IncompleteJournal, "incomplete journal");
REFAGENT_SUBJECT_ERROR(ConfigError, "configuration error");

#undef REFAGENT_SUBJECT_ERROR

class UndefinedRate : public Error {
 public:
  UndefinedRate() : Error("rate undefined: baseline value is zero") {}
};

class NoCodeBlock : public Error {
 public:
  NoCodeBlock() : Error("response contains no fenced code block") {}
};

class PlanParseError : public Error {
 public:
  explicit PlanParseError(const std::string& detail)
      : Error("plan parse error: " + detail) {}
};

class ContextOverflow : public Error {
 public:
  ContextOverflow(long estimated, long budget)
      : Error("prompt of ~" + std::to_string(estimated) +
              " tokens exceeds context budget " + std::to_string(budget)) {}
};

class BackendError : public Error {
 public:
  BackendError(int status, std::string body)
      : Error("backend error (status " + std::to_string(status) + "): " + body),
        status_(status),
        body_(std::move(body)) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& detail)
      : Error("schema error in " + path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class MissingRange : public Error {
 public:
  MissingRange() : Error("scenario-1 matching requires line ranges on both sides") {}
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t got, std::size_t k)
      : Error("pass@k expects " + std::to_string(k) + " verdicts, got " +
              std::to_string(got)) {}
};

class AllZeroDifferences : public Error {
 public:
  AllZeroDifferences() : Error("all paired differences are zero") {}
};

}  // namespace refagent

#endif  // REFAGENT_ERROR_H_
