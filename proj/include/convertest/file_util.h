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

#ifndef CONVERTEST_FILE_UTIL_H_
#define CONVERTEST_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace convertest {

// Throws Error when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Writes through a temporary sibling and renames, so readers never observe a
// partial file. Creates parent directories.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// "2026-10-17T12:34:56Z"
std::string UtcTimestamp();
// "20261017-123456", safe for directory names.
std::string CompactUtcTimestamp();

}  // namespace convertest

#endif  // CONVERTEST_FILE_UTIL_H_
