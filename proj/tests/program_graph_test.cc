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

#include <string>
#include <vector>

#include "doctest.h"
#include "lsgen/error.h"
#include "lsgen/rng.h"
#include "oracles.h"

namespace lsgen {
namespace {

using Strings = std::vector<std::string>;

const char kCovr[] =
    "count ( with_relation ( filter ( gray , filter ( square , find ( cat ) ) "
    ") , looking_at , find ( mouse ) ) )";

NodeId find_label(const ProgramGraph& g, const std::string& label) {
  for (NodeId v = 0; v < g.size(); ++v) {
    if (g.label(v) == label) return v;
  }
  return -1;
}

ErrorCode parse_error(std::string_view text, Dialect d) {
  try {
    parse(text, d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::kIo;
}

TEST_CASE("func-comma smallest branching program") {
  ProgramGraph g = parse("f ( a , b )", Dialect::kFuncComma);
  REQUIRE(g.size() == 4);
  CHECK(g.label(0) == "<s>");
  NodeId f = find_label(g, "f");
  CHECK(g.parent(f) == 0);
  REQUIRE(g.children(f).size() == 2);
  CHECK(g.label(g.children(f)[0]) == "a");
  CHECK(g.label(g.children(f)[1]) == "b");
  auto sib = g.sibling_edges();
  REQUIRE(sib.size() == 1);
  CHECK(g.label(sib[0].left) == "a");
  CHECK(g.label(sib[0].right) == "b");
}

TEST_CASE("COVR program has 11 symbols and a three-way branch") {
  ProgramGraph g = parse(kCovr, Dialect::kFuncComma);
  CHECK(g.size() == 12);
  NodeId w = find_label(g, "with_relation");
  REQUIRE(g.children(w).size() == 3);
  int sib_under_w = 0;
  for (auto e : g.sibling_edges()) sib_under_w += g.parent(e.left) == w;
  CHECK(sib_under_w == 2);
  CHECK(symbol_sequence(g, false).size() == 11);
}

TEST_CASE("symbol sequence flag") {
  ProgramGraph g = parse("f ( a , b )", Dialect::kFuncComma);
  CHECK(symbol_sequence(g, false) == Strings{"f", "a", "b"});
  CHECK(symbol_sequence(g, true) == Strings{"f", "(", "a", ",", "b", ")"});
  ProgramGraph covr = parse(kCovr, Dialect::kFuncComma);
  CHECK(symbol_sequence(covr, false) ==
        Strings{"count", "with_relation", "filter", "gray", "filter", "square",
                "find", "cat", "looking_at", "find", "mouse"});
}

TEST_CASE("sexpr heads own the rest of the list") {
  ProgramGraph g = parse("( lambda $0 e ( and ( flight $0 ) ( round_trip $0 ) ) )",
                         Dialect::kSexpr);
  NodeId lambda = find_label(g, "lambda");
  REQUIRE(lambda > 0);
  CHECK(g.parent(lambda) == 0);
  Strings kids;
  for (NodeId c : g.children(lambda)) kids.push_back(g.label(c));
  CHECK(kids == Strings{"$0", "e", "and"});
  NodeId a = find_label(g, "and");
  CHECK(g.children(a).size() == 2);
}

TEST_CASE("single token program") {
  ProgramGraph g = parse("x", Dialect::kFuncComma);
  CHECK(g.size() == 2);
  CHECK(g.parent_child_edges().size() == 1);
  CHECK(g.sibling_edges().empty());
  CHECK(parse("x", Dialect::kSexpr).size() == 2);
}

TEST_CASE("parse errors") {
  CHECK(parse_error("", Dialect::kFuncComma) == ErrorCode::kEmptyProgram);
  CHECK(parse_error("   ", Dialect::kSexpr) == ErrorCode::kEmptyProgram);
  CHECK(parse_error("f ( a", Dialect::kFuncComma) == ErrorCode::kUnbalancedParens);
  CHECK(parse_error("f ( a ) )", Dialect::kFuncComma) == ErrorCode::kUnbalancedParens);
  CHECK(parse_error("( f a", Dialect::kSexpr) == ErrorCode::kUnbalancedParens);
  CHECK(parse_error("f ( a , )", Dialect::kFuncComma) == ErrorCode::kDanglingComma);
  CHECK(parse_error("f ( , a )", Dialect::kFuncComma) == ErrorCode::kDanglingComma);
  CHECK(parse_error("f ( a b )", Dialect::kFuncComma) == ErrorCode::kUnexpectedToken);
  CHECK(parse_error("f g", Dialect::kFuncComma) == ErrorCode::kUnexpectedToken);
  CHECK(parse_error("( ( f ) a )", Dialect::kSexpr) == ErrorCode::kUnexpectedToken);
  CHECK(parse_error("( f , a )", Dialect::kSexpr) == ErrorCode::kUnexpectedToken);
}

TEST_CASE("empty argument list is a leaf") {
  ProgramGraph g = parse("f ( )", Dialect::kFuncComma);
  CHECK(g.size() == 2);
}

TEST_CASE("from_parents validates the tree") {
  std::vector<NodeId> ok = {-1, 0, 1, 1};
  ProgramGraph g = ProgramGraph::from_parents({"r", "a", "b", "c"}, ok);
  CHECK(g.children(1).size() == 2);
  std::vector<NodeId> cyclic = {-1, 2, 1};
  CHECK_THROWS_AS(ProgramGraph::from_parents({"r", "a", "b"}, cyclic), Error);
  std::vector<NodeId> bad_root = {0, 0};
  CHECK_THROWS_AS(ProgramGraph::from_parents({"r", "a"}, bad_root), Error);
  std::vector<NodeId> short_parents = {-1};
  CHECK_THROWS_AS(ProgramGraph::from_parents({"r", "a"}, short_parents), Error);
}

TEST_CASE("dialect names") {
  CHECK(dialect_from_name("func-comma") == Dialect::kFuncComma);
  CHECK(dialect_from_name("sexpr") == Dialect::kSexpr);
  CHECK_FALSE(dialect_from_name("lisp").has_value());
  CHECK(dialect_name(Dialect::kSexpr) == "sexpr");
}

// Random trees render to text and parse back to the same tree; the edge
// counts follow from the tree shape.
TEST_CASE("round trip and edge counts on random trees") {
  Rng rng(7);
  const Strings alphabet = {"f", "g", "h", "x", "y"};
  for (int trial = 0; trial < 300; ++trial) {
    ProgramGraph g = oracle::random_tree(rng, 2 + static_cast<int>(rng.index(14)), alphabet);
    // A <s> root with one child keeps serialization unambiguous.
    if (g.children(0).size() != 1) continue;
    CHECK(static_cast<int>(g.parent_child_edges().size()) == g.size() - 1);
    size_t expected_sib = 0;
    for (NodeId v = 0; v < g.size(); ++v) {
      if (!g.children(v).empty()) expected_sib += g.children(v).size() - 1;
    }
    CHECK(g.sibling_edges().size() == expected_sib);
    for (Dialect d : {Dialect::kFuncComma, Dialect::kSexpr}) {
      Strings text = serialize(g, d);
      ProgramGraph back = parse(text, d);
      CHECK(same_tree(g, back));
      CHECK(serialize(back, d) == text);
    }
  }
}

}  // namespace
}  // namespace lsgen
