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

#ifndef LSGEN_DATASET_H_
#define LSGEN_DATASET_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lsgen/program_graph.h"

namespace lsgen {

struct Example {
  std::string id;
  std::string utterance;
  std::string program;  // space-separated tokens
  std::vector<std::string> derivation;
  std::optional<std::string> template_override;
};

// Examples with their parsed program graphs. Example order is file order and
// is what every split and sample refers back to.
class Dataset {
 public:
  // Parses every program. Throws Error(kMalformedInput) naming the example
  // on a parse failure or a duplicate id.
  Dataset(std::vector<Example> examples, Dialect dialect);

  // JSON Lines with fields id, utterance, program and optionally derivation
  // and template. Errors carry the 1-based line number.
  static Dataset load_jsonl(const std::filesystem::path& path,
                            Dialect dialect);

  size_t size() const { return examples_.size(); }
  Dialect dialect() const { return dialect_; }
  const std::vector<Example>& examples() const { return examples_; }
  const Example& example(size_t i) const { return examples_[i]; }
  const ProgramGraph& graph(size_t i) const { return graphs_[i]; }
  const std::vector<ProgramGraph>& graphs() const { return graphs_; }

  std::optional<size_t> find(std::string_view id) const;

  // Throws Error(kInvalidArgument) for unknown ids.
  std::vector<size_t> indices_of(std::span<const std::string> ids) const;

  // Graphs of the given examples, in the given order.
  std::vector<ProgramGraph> graphs_of(std::span<const size_t> indices) const;

 private:
  Dataset() = default;
  void init(std::span<const int> lines);

  std::vector<Example> examples_;
  std::vector<ProgramGraph> graphs_;
  std::unordered_map<std::string, size_t> by_id_;
  Dialect dialect_ = Dialect::kFuncComma;
};

}  // namespace lsgen

#endif  // LSGEN_DATASET_H_
