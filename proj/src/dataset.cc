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

#include "lsgen/dataset.h"

#include "lsgen/error.h"
#include "lsgen/io.h"

namespace lsgen {

Dataset::Dataset(std::vector<Example> examples, Dialect dialect)
    : examples_(std::move(examples)), dialect_(dialect) {
  init({});
}

void Dataset::init(std::span<const int> lines) {
  auto where = [&](size_t i) {
    std::string w = "example '" + examples_[i].id + "'";
    if (i < lines.size()) w = "line " + std::to_string(lines[i]) + ": " + w;
    return w;
  };
  graphs_.reserve(examples_.size());
  for (size_t i = 0; i < examples_.size(); ++i) {
    const Example& ex = examples_[i];
    if (!by_id_.emplace(ex.id, i).second) {
      throw Error(ErrorCode::kMalformedInput, where(i) + ": duplicate id");
    }
    try {
      graphs_.push_back(parse(ex.program, dialect_));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedInput,
                  where(i) + ": " + std::string(error_code_name(e.code())) + ": " + e.what());
    }
  }
}

Dataset Dataset::load_jsonl(const std::filesystem::path& path,
                            Dialect dialect) {
  std::vector<Example> examples;
  std::vector<int> lines;
  for (const JsonLine& line : read_jsonl(path)) {
    lines.push_back(line.line);
    Example ex;
    ex.id = require_string(line, "id");
    ex.program = require_string(line, "program");
    if (auto it = line.value.find("utterance");
        it != line.value.end() && it->is_string()) {
      ex.utterance = it->get<std::string>();
    }
    if (auto it = line.value.find("derivation"); it != line.value.end()) {
      if (!it->is_array()) {
        throw Error(ErrorCode::kMalformedInput,
                    "line " + std::to_string(line.line) +
                        ": 'derivation' must be a list of rule ids");
      }
      for (const auto& r : *it) {
        ex.derivation.push_back(r.is_string() ? r.get<std::string>() : r.dump());
      }
    }
    if (auto it = line.value.find("template");
        it != line.value.end() && it->is_string()) {
      ex.template_override = it->get<std::string>();
    }
    examples.push_back(std::move(ex));
  }
  Dataset out;
  out.examples_ = std::move(examples);
  out.dialect_ = dialect;
  out.init(lines);
  return out;
}

std::optional<size_t> Dataset::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<size_t> Dataset::indices_of(
    std::span<const std::string> ids) const {
  std::vector<size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto i = find(id);
    if (!i) throw Error(ErrorCode::kInvalidArgument, "unknown example id '" + id + "'");
    out.push_back(*i);
  }
  return out;
}

std::vector<ProgramGraph> Dataset::graphs_of(
    std::span<const size_t> indices) const {
  std::vector<ProgramGraph> out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(graphs_[i]);
  return out;
}

}  // namespace lsgen
