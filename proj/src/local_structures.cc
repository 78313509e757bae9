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

#include "lsgen/local_structures.h"

#include <initializer_list>

#include "lsgen/error.h"

namespace lsgen {

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kPC: return "PC";
    case Shape::kSib: return "SIB";
    case Shape::kPCChain3: return "PC-CHAIN-3";
    case Shape::kSibRun3: return "SIB-RUN-3";
    case Shape::kPCSib3: return "PC-SIB-3";
    case Shape::kPCChain4: return "PC-CHAIN-4";
    case Shape::kSibRun4: return "SIB-RUN-4";
    case Shape::kGPSib4: return "GP-SIB-4";
    case Shape::kPCSib4: return "PC-SIB-4";
  }
  return "?";
}

std::optional<Shape> shape_from_name(std::string_view name) {
  for (Shape s : kAllShapes) {
    if (shape_name(s) == name) return s;
  }
  return std::nullopt;
}

int shape_arity(Shape shape) {
  switch (shape) {
    case Shape::kPC:
    case Shape::kSib:
      return 2;
    case Shape::kPCChain3:
    case Shape::kSibRun3:
    case Shape::kPCSib3:
      return 3;
    default:
      return 4;
  }
}

bool has_sibling_edge(Shape shape) { return !is_pure_parent_child(shape); }

bool is_pure_parent_child(Shape shape) {
  return shape == Shape::kPC || shape == Shape::kPCChain3 ||
         shape == Shape::kPCChain4;
}

bool shape_allowed(Shape shape, ShapeFilter filter) {
  switch (filter) {
    case ShapeFilter::kAll: return true;
    case ShapeFilter::kNoSibling: return !has_sibling_edge(shape);
    case ShapeFilter::kNoParentChild: return !is_pure_parent_child(shape);
  }
  return true;
}

std::string to_string(const LocalStructure& s) {
  std::string out(shape_name(s.shape));
  out += '[';
  for (size_t i = 0; i < s.labels.size(); ++i) {
    if (i > 0) out += ',';
    out += s.labels[i];
  }
  out += ']';
  return out;
}

namespace {

class Extractor {
 public:
  Extractor(const ProgramGraph& g, int n, ShapeFilter filter,
            StructureSet& out)
      : g_(g), n_(n), filter_(filter), out_(out) {}

  void run() {
    for (NodeId v = 0; v < g_.size(); ++v) from_parent(v);
  }

 private:
  void emit(Shape shape, std::initializer_list<NodeId> ids) {
    if (shape_arity(shape) > n_ || !shape_allowed(shape, filter_)) return;
    LocalStructure s{shape, {}};
    s.labels.reserve(ids.size());
    for (NodeId id : ids) s.labels.push_back(g_.label(id));
    out_.insert(std::move(s));
  }

  // Every catalog instance has a unique topmost node; enumerate by it.
  void from_parent(NodeId v) {
    auto ch = g_.children(v);
    const size_t k = ch.size();
    for (size_t i = 0; i < k; ++i) {
      NodeId c = ch[i];
      emit(Shape::kPC, {v, c});
      if (i + 1 < k) {
        emit(Shape::kSib, {c, ch[i + 1]});
        emit(Shape::kPCSib3, {v, c, ch[i + 1]});
      }
      if (i + 2 < k) {
        emit(Shape::kSibRun3, {c, ch[i + 1], ch[i + 2]});
        emit(Shape::kPCSib4, {v, c, ch[i + 1], ch[i + 2]});
      }
      if (i + 3 < k) emit(Shape::kSibRun4, {c, ch[i + 1], ch[i + 2], ch[i + 3]});
      if (n_ < 3) continue;
      auto gch = g_.children(c);
      for (size_t j = 0; j < gch.size(); ++j) {
        emit(Shape::kPCChain3, {v, c, gch[j]});
        if (j + 1 < gch.size()) emit(Shape::kGPSib4, {v, c, gch[j], gch[j + 1]});
        for (NodeId leaf : g_.children(gch[j])) {
          emit(Shape::kPCChain4, {v, c, gch[j], leaf});
        }
      }
    }
  }

  const ProgramGraph& g_;
  int n_;
  ShapeFilter filter_;
  StructureSet& out_;
};

void check_order(int n) {
  if (n < 2 || n > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "structure order must be 2, 3 or 4, got " + std::to_string(n));
  }
}

}  // namespace

StructureSet extract(const ProgramGraph& graph, int n, ShapeFilter filter) {
  check_order(n);
  StructureSet out;
  Extractor(graph, n, filter, out).run();
  return out;
}

StructureSet corpus_structures(std::span<const ProgramGraph> programs, int n,
                               ShapeFilter filter) {
  check_order(n);
  StructureSet out;
  for (const ProgramGraph& g : programs) Extractor(g, n, filter, out).run();
  return out;
}

StructureSet filter_shapes(const StructureSet& structures,
                           ShapeFilter filter) {
  StructureSet out;
  for (const LocalStructure& s : structures) {
    if (shape_allowed(s.shape, filter)) out.insert(s);
  }
  return out;
}

}  // namespace lsgen
