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

// Program trees and sibling-augmented program graphs.
//
// A program is a whitespace-tokenized sequence of symbol tokens and
// structural tokens. Two surface dialects are supported:
//
//   func-comma:  count ( filter ( gray , find ( cat ) ) )
//   sexpr:       ( lambda $0 e ( and ( flight $0 ) ( round_trip $0 ) ) )
//
// In func-comma a symbol followed by "(" takes the comma-separated
// arguments as its ordered children. In sexpr the head of each list is the
// parent of the remaining elements. Either way a synthetic "<s>" node is
// placed above the program root, and every pair of consecutive children of
// a node is connected by a sibling edge.

#ifndef LSGEN_PROGRAM_GRAPH_H_
#define LSGEN_PROGRAM_GRAPH_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lsgen {

enum class Dialect { kFuncComma, kSexpr };

std::string_view dialect_name(Dialect dialect);
std::optional<Dialect> dialect_from_name(std::string_view name);

inline constexpr std::string_view kRootLabel = "<s>";

// True for "(", ")" and ",".
bool is_structural_token(std::string_view token);

// Splits on ASCII whitespace. Programs are stored pre-tokenized, so this is
// the only tokenization the toolkit performs.
std::vector<std::string> split_tokens(std::string_view text);

using NodeId = int;

struct Node {
  std::string label;
  NodeId parent = -1;
  std::vector<NodeId> children;
};

// Sibling edge between consecutive children; `left` precedes `right`.
struct SiblingEdge {
  NodeId left;
  NodeId right;
  friend bool operator==(const SiblingEdge&, const SiblingEdge&) = default;
};

// Labeled ordered tree plus consecutive-sibling edges. Node 0 is the root;
// for parsed programs it carries the "<s>" label. Immutable once built.
class ProgramGraph {
 public:
  // Builds a graph from a parent array. parents[0] must be -1 and every
  // other entry must name an existing node such that the result is a tree.
  // Children are ordered by increasing node id. Throws Error
  // (kInvalidArgument) when the arrays do not describe a tree.
  static ProgramGraph from_parents(std::vector<std::string> labels,
                                   std::span<const NodeId> parents);

  NodeId root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(NodeId id) const { return nodes_[id]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::string& label(NodeId id) const { return nodes_[id].label; }
  NodeId parent(NodeId id) const { return nodes_[id].parent; }
  std::span<const NodeId> children(NodeId id) const {
    return nodes_[id].children;
  }

  std::vector<std::pair<NodeId, NodeId>> parent_child_edges() const;
  std::vector<SiblingEdge> sibling_edges() const;

  // Raw program tokens; empty for graphs built with from_parents.
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Symbol nodes in program order (excludes the root when it is "<s>").
  const std::vector<NodeId>& symbol_order() const { return symbol_order_; }

 private:
  friend class GraphBuilder;

  std::vector<Node> nodes_;
  std::vector<std::string> tokens_;
  std::vector<NodeId> symbol_order_;
};

// Parses a token sequence. Throws Error with kUnbalancedParens,
// kEmptyProgram, kDanglingComma or kUnexpectedToken.
ProgramGraph parse(std::span<const std::string> tokens, Dialect dialect);
ProgramGraph parse(std::string_view program, Dialect dialect);

// Tokens of the program. With include_structural off, symbol labels in
// program order without "<s>"; with it on, the raw token sequence.
std::vector<std::string> symbol_sequence(const ProgramGraph& graph,
                                         bool include_structural);

// Renders the tree (without the "<s>" root) back into the given dialect.
std::vector<std::string> serialize(const ProgramGraph& graph, Dialect dialect);

// Label- and order-preserving isomorphism of two rooted ordered trees.
bool same_tree(const ProgramGraph& a, const ProgramGraph& b);

}  // namespace lsgen

#endif  // LSGEN_PROGRAM_GRAPH_H_
