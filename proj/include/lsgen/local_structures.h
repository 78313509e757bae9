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

// Local structures: small connected sub-graphs of a program graph drawn
// from a fixed shape catalog.
//
//   order 2: PC          parent -> child
//            SIB         two consecutive siblings
//   order 3: PC-CHAIN-3  grandparent -> parent -> child
//            SIB-RUN-3   three consecutive siblings
//            PC-SIB-3    parent with two consecutive children
//   order 4: PC-CHAIN-4  four-node parent-child chain
//            SIB-RUN-4   four consecutive siblings
//            GP-SIB-4    grandparent -> parent -> two consecutive children
//            PC-SIB-4    parent with three consecutive children
//
// The catalog of order n contains every shape of order <= n. A structure is
// stored as its shape plus the node labels in the shape's role order, so
// repeated occurrences collapse to one set element.

#ifndef LSGEN_LOCAL_STRUCTURES_H_
#define LSGEN_LOCAL_STRUCTURES_H_

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsgen/program_graph.h"

namespace lsgen {

enum class Shape {
  kPC,
  kSib,
  kPCChain3,
  kSibRun3,
  kPCSib3,
  kPCChain4,
  kSibRun4,
  kGPSib4,
  kPCSib4,
};

inline constexpr Shape kAllShapes[] = {
    Shape::kPC,       Shape::kSib,     Shape::kPCChain3,
    Shape::kSibRun3,  Shape::kPCSib3,  Shape::kPCChain4,
    Shape::kSibRun4,  Shape::kGPSib4,  Shape::kPCSib4,
};

std::string_view shape_name(Shape shape);
std::optional<Shape> shape_from_name(std::string_view name);

// Number of nodes; also the smallest catalog order containing the shape.
int shape_arity(Shape shape);

// True when the shape contains at least one sibling edge.
bool has_sibling_edge(Shape shape);

// True for PC, PC-CHAIN-3 and PC-CHAIN-4.
bool is_pure_parent_child(Shape shape);

struct LocalStructure {
  Shape shape;
  std::vector<std::string> labels;

  friend bool operator==(const LocalStructure&,
                         const LocalStructure&) = default;
  friend auto operator<=>(const LocalStructure&,
                          const LocalStructure&) = default;
};

// e.g. "PC[f,a]".
std::string to_string(const LocalStructure& s);

using StructureSet = std::set<LocalStructure>;

// Which shapes take part in a computation.
enum class ShapeFilter {
  kAll,
  kNoSibling,      // drop every shape with a sibling edge
  kNoParentChild,  // drop the pure parent-child chains
};

bool shape_allowed(Shape shape, ShapeFilter filter);

// All catalog structures of order <= n occurring in the graph. n must be in
// [2, 4]; otherwise throws Error(kInvalidArgument).
StructureSet extract(const ProgramGraph& graph, int n,
                     ShapeFilter filter = ShapeFilter::kAll);

// Union of extract over a corpus.
StructureSet corpus_structures(std::span<const ProgramGraph> programs, int n,
                               ShapeFilter filter = ShapeFilter::kAll);

StructureSet filter_shapes(const StructureSet& structures, ShapeFilter filter);

}  // namespace lsgen

#endif  // LSGEN_LOCAL_STRUCTURES_H_
