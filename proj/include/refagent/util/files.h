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

#ifndef REFAGENT_UTIL_FILES_H_
#define REFAGENT_UTIL_FILES_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace refagent::util {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place, creating
/// parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Directories never considered part of a workspace's content.
bool is_excluded_dir(const std::string& name);

/// relative path -> SHA-256 of content, for every regular file under `root`
/// outside .refagent/, target/ and .git/.
std::map<std::string, std::string> file_digests(const std::filesystem::path& root);
/// One digest over file_digests(root): changes iff any path or byte does.
std::string tree_digest(const std::filesystem::path& root);

/// Exclusive advisory lock on `<dir>/.lock`, released on destruction.
/// Throws Error when another process holds it.
class DirectoryLock {
 public:
  explicit DirectoryLock(const std::filesystem::path& dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

 private:
  int fd_ = -1;
};

/// ISO-8601 UTC wall-clock time.
std::string utc_timestamp();

}  // namespace refagent::util

#endif  // REFAGENT_UTIL_FILES_H_
