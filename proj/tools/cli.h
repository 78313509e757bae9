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


// Command-line driver. All subcommands write deterministic JSON/JSONL files
// plus a manifest.json naming the config hash and input content hashes.

#ifndef LSGEN_TOOLS_CLI_H_
#define LSGEN_TOOLS_CLI_H_

#include <ostream>

namespace lsgen::cli {

// Parses argv, runs the selected subcommand and returns the exit status.
// Errors are reported on `err` as {"error": {"code": ..., "message": ...}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsgen::cli

#endif  // LSGEN_TOOLS_CLI_H_
