// Copyright 2026 The lsgen Authors.
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

#ifndef LSGEN_IO_H_
#define LSGEN_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace lsgen {

struct JsonLine {
  int line;  // 1-based
  nlohmann::json value;
};

std::string read_file(const std::filesystem::path& path);

// Blank lines are skipped. Throws Error(kMalformedInput) with the line
// number on invalid JSON, Error(kIo) when the file cannot be read.
std::vector<JsonLine> read_jsonl(const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

// One compact JSON document per line.
std::string to_jsonl(const std::vector<nlohmann::json>& records);

// Field accessors that report the offending line.
std::string require_string(const JsonLine& line, const char* key);

}  // namespace lsgen

#endif  // LSGEN_IO_H_
