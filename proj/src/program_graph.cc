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

#include "lsgen/program_graph.h"

#include <cctype>
#include <string>
#include <utility>

#include "lsgen/error.h"

namespace lsgen {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedParens: return "UnbalancedParens";
    case ErrorCode::kEmptyProgram: return "EmptyProgram";
    case ErrorCode::kDanglingComma: return "DanglingComma";
    case ErrorCode::kUnexpectedToken: return "UnexpectedToken";
    case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::kNoValidSplitFound: return "NoValidSplitFound";
    case ErrorCode::kMissingDerivation: return "MissingDerivation";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kRaggedPredictions: return "RaggedPredictions";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyTestSet: return "EmptyTestSet";
    case ErrorCode::kIdenticalSequences: return "IdenticalSequences";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

std::string_view dialect_name(Dialect dialect) {
  return dialect == Dialect::kFuncComma ? "func-comma" : "sexpr";
}

std::optional<Dialect> dialect_from_name(std::string_view name) {
  if (name == "func-comma") return Dialect::kFuncComma;
  if (name == "sexpr") return Dialect::kSexpr;
  return std::nullopt;
}

bool is_structural_token(std::string_view token) {
  return token == "(" || token == ")" || token == ",";
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> ProgramGraph::parent_child_edges()
    const {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId p = 0; p < size(); ++p) {
    for (NodeId c : nodes_[p].children) edges.emplace_back(p, c);
  }
  return edges;
}

std::vector<SiblingEdge> ProgramGraph::sibling_edges() const {
  std::vector<SiblingEdge> edges;
  for (const Node& n : nodes_) {
    for (size_t i = 1; i < n.children.size(); ++i) {
      edges.push_back({n.children[i - 1], n.children[i]});
    }
  }
  return edges;
}

class GraphBuilder {
 public:
  explicit GraphBuilder(std::string root_label) {
    graph_.nodes_.push_back(Node{std::move(root_label), -1, {}});
  }

  NodeId add(std::string label, NodeId parent) {
    NodeId id = graph_.size();
    graph_.nodes_.push_back(Node{std::move(label), parent, {}});
    graph_.nodes_[parent].children.push_back(id);
    return id;
  }

  ProgramGraph finish(std::vector<std::string> tokens) && {
    graph_.tokens_ = std::move(tokens);
    fill_symbol_order();
    return std::move(graph_);
  }

  static ProgramGraph from_nodes(std::vector<Node> nodes) {
    GraphBuilder b("");
    b.graph_.nodes_ = std::move(nodes);
    b.fill_symbol_order();
    return std::move(b.graph_);
  }

 private:
  // Preorder, which is textual order for both dialects.
  void fill_symbol_order() {
    auto& order = graph_.symbol_order_;
    order.clear();
    std::vector<NodeId> stack = {0};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      if (id != 0 || graph_.nodes_[0].label != kRootLabel) order.push_back(id);
      const auto& ch = graph_.nodes_[id].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
  }

  ProgramGraph graph_;
};

ProgramGraph ProgramGraph::from_parents(std::vector<std::string> labels,
                                        std::span<const NodeId> parents) {
  const int n = static_cast<int>(labels.size());
  if (n == 0 || static_cast<int>(parents.size()) != n || parents[0] != -1) {
    throw Error(ErrorCode::kInvalidArgument,
                "from_parents: need matching non-empty arrays with "
                "parents[0] == -1");
  }
  std::vector<Node> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i].label = std::move(labels[i]);
    nodes[i].parent = parents[i];
  }
  for (int i = 1; i < n; ++i) {
    if (parents[i] < 0 || parents[i] >= n || parents[i] == i) {
      throw Error(ErrorCode::kInvalidArgument,
                  "from_parents: bad parent for node " + std::to_string(i));
    }
    nodes[parents[i]].children.push_back(i);
  }
  // Every node must reach the root without revisiting anything.
  for (int i = 1; i < n; ++i) {
    int steps = 0;
    for (NodeId v = i; v != 0; v = nodes[v].parent) {
      if (++steps > n) {
        throw Error(ErrorCode::kInvalidArgument, "from_parents: cycle");
      }
    }
  }
  return GraphBuilder::from_nodes(std::move(nodes));
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& what, size_t pos) {
  throw Error(code, what + " at token " + std::to_string(pos));
}

void check_balance(std::span<const std::string> tokens) {
  int depth = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "(") {
      ++depth;
    } else if (tokens[i] == ")") {
      if (--depth < 0) fail(ErrorCode::kUnbalancedParens, "unmatched ')'", i);
    }
  }
  if (depth != 0) {
    throw Error(ErrorCode::kUnbalancedParens,
                std::to_string(depth) + " unclosed '('");
  }
}

class FuncCommaParser {
 public:
  FuncCommaParser(std::span<const std::string> tokens, GraphBuilder& builder)
      : tokens_(tokens), builder_(builder) {}

  void run() {
    parse_expr(0);
    if (pos_ < tokens_.size()) {
      fail(ErrorCode::kUnexpectedToken,
           "trailing '" + tokens_[pos_] + "' after program", pos_);
    }
  }

 private:
  bool at(std::string_view t) const {
    return pos_ < tokens_.size() && tokens_[pos_] == t;
  }

  void parse_expr(NodeId parent) {
    const std::string& tok = tokens_[pos_];
    if (tok == ",") fail(ErrorCode::kDanglingComma, "missing argument", pos_);
    if (is_structural_token(tok)) {
      fail(ErrorCode::kUnexpectedToken, "expected a symbol, got '" + tok + "'",
           pos_);
    }
    NodeId self = builder_.add(tok, parent);
    ++pos_;
    if (!at("(")) return;
    ++pos_;
    if (at(")")) {
      ++pos_;
      return;
    }
    for (;;) {
      parse_expr(self);
      if (at(",")) {
        ++pos_;
        if (at(")") || at(",")) {
          fail(ErrorCode::kDanglingComma, "comma without a following argument",
               pos_ - 1);
        }
      } else if (at(")")) {
        ++pos_;
        return;
      } else {
        fail(ErrorCode::kUnexpectedToken,
             "expected ',' or ')', got '" + tokens_[pos_] + "'", pos_);
      }
    }
  }

  std::span<const std::string> tokens_;
  GraphBuilder& builder_;
  size_t pos_ = 0;
};

class SexprParser {
 public:
  SexprParser(std::span<const std::string> tokens, GraphBuilder& builder)
      : tokens_(tokens), builder_(builder) {}

  void run() {
    parse_element(0);
    if (pos_ < tokens_.size()) {
      fail(ErrorCode::kUnexpectedToken,
           "trailing '" + tokens_[pos_] + "' after program", pos_);
    }
  }

 private:
  void parse_element(NodeId parent) {
    const std::string& tok = tokens_[pos_];
    if (tok == "(") {
      ++pos_;
      const std::string& head = tokens_[pos_];
      if (is_structural_token(head)) {
        fail(ErrorCode::kUnexpectedToken,
             "list head must be a symbol, got '" + head + "'", pos_);
      }
      NodeId self = builder_.add(head, parent);
      ++pos_;
      while (tokens_[pos_] != ")") parse_element(self);
      ++pos_;
    } else if (is_structural_token(tok)) {
      fail(ErrorCode::kUnexpectedToken, "unexpected '" + tok + "'", pos_);
    } else {
      builder_.add(tok, parent);
      ++pos_;
    }
  }

  std::span<const std::string> tokens_;
  GraphBuilder& builder_;
  size_t pos_ = 0;
};

}  // namespace

ProgramGraph parse(std::span<const std::string> tokens, Dialect dialect) {
  if (tokens.empty()) throw Error(ErrorCode::kEmptyProgram, "empty program");
  check_balance(tokens);
  GraphBuilder builder{std::string(kRootLabel)};
  if (dialect == Dialect::kFuncComma) {
    FuncCommaParser(tokens, builder).run();
  } else {
    SexprParser(tokens, builder).run();
  }
  return std::move(builder).finish({tokens.begin(), tokens.end()});
}

ProgramGraph parse(std::string_view program, Dialect dialect) {
  auto tokens = split_tokens(program);
  return parse(std::span<const std::string>(tokens), dialect);
}

std::vector<std::string> symbol_sequence(const ProgramGraph& graph,
                                         bool include_structural) {
  if (include_structural && !graph.tokens().empty()) return graph.tokens();
  std::vector<std::string> out;
  out.reserve(graph.symbol_order().size());
  for (NodeId id : graph.symbol_order()) out.push_back(graph.label(id));
  return out;
}

namespace {

void render(const ProgramGraph& g, NodeId id, Dialect dialect,
            std::vector<std::string>& out) {
  auto children = g.children(id);
  if (dialect == Dialect::kFuncComma) {
    out.push_back(g.label(id));
    if (children.empty()) return;
    out.emplace_back("(");
    for (size_t i = 0; i < children.size(); ++i) {
      if (i > 0) out.emplace_back(",");
      render(g, children[i], dialect, out);
    }
    out.emplace_back(")");
  } else {
    if (children.empty()) {
      out.push_back(g.label(id));
      return;
    }
    out.emplace_back("(");
    out.push_back(g.label(id));
    for (NodeId c : children) render(g, c, dialect, out);
    out.emplace_back(")");
  }
}

bool same_subtree(const ProgramGraph& a, NodeId x, const ProgramGraph& b,
                  NodeId y) {
  if (a.label(x) != b.label(y)) return false;
  auto cx = a.children(x);
  auto cy = b.children(y);
  if (cx.size() != cy.size()) return false;
  for (size_t i = 0; i < cx.size(); ++i) {
    if (!same_subtree(a, cx[i], b, cy[i])) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> serialize(const ProgramGraph& graph,
                                   Dialect dialect) {
  std::vector<std::string> out;
  if (graph.label(graph.root()) == kRootLabel) {
    for (NodeId c : graph.children(graph.root())) {
      render(graph, c, dialect, out);
    }
  } else {
    render(graph, graph.root(), dialect, out);
  }
  return out;
}

bool same_tree(const ProgramGraph& a, const ProgramGraph& b) {
  return a.size() == b.size() && same_subtree(a, a.root(), b, b.root());
}

}  // namespace lsgen
