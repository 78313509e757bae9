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

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "lsgen/error.h"
#include "lsgen/program_graph.h"
#include "lsgen/rng.h"
#include "oracles.h"

namespace lsgen {
namespace {

ProgramGraph fc(std::string_view text) { return parse(text, Dialect::kFuncComma); }

LocalStructure ls(Shape s, std::vector<std::string> labels) {
  return {s, std::move(labels)};
}

TEST_CASE("2-LS of a branching program") {
  StructureSet expected = {
      ls(Shape::kPC, {"<s>", "f"}), ls(Shape::kPC, {"f", "a"}),
      ls(Shape::kPC, {"f", "b"}), ls(Shape::kSib, {"a", "b"})};
  CHECK(extract(fc("f ( a , b )"), 2) == expected);
}

TEST_CASE("3-LS adds chains and the parent with both children") {
  StructureSet expected = extract(fc("f ( a , b )"), 2);
  expected.insert(ls(Shape::kPCChain3, {"<s>", "f", "a"}));
  expected.insert(ls(Shape::kPCChain3, {"<s>", "f", "b"}));
  expected.insert(ls(Shape::kPCSib3, {"f", "a", "b"}));
  CHECK(extract(fc("f ( a , b )"), 3) == expected);
}

TEST_CASE("4-LS shapes") {
  StructureSet s = extract(fc("g ( f ( a , b , c ) )"), 4);
  CHECK(s.count(ls(Shape::kPCSib4, {"f", "a", "b", "c"})));
  CHECK(s.count(ls(Shape::kSibRun3, {"a", "b", "c"})));
  CHECK(s.count(ls(Shape::kGPSib4, {"g", "f", "a", "b"})));
  CHECK(s.count(ls(Shape::kGPSib4, {"g", "f", "b", "c"})));
  CHECK(s.count(ls(Shape::kPCChain4, {"<s>", "g", "f", "c"})));
  // Non-consecutive siblings never pair up.
  CHECK_FALSE(s.count(ls(Shape::kSib, {"a", "c"})));
  CHECK_FALSE(s.count(ls(Shape::kGPSib4, {"g", "f", "a", "c"})));
  StructureSet run = extract(fc("f ( a , b , c , d )"), 4);
  CHECK(run.count(ls(Shape::kSibRun4, {"a", "b", "c", "d"})));
}

TEST_CASE("one-node graph has no structures") {
  std::vector<NodeId> parents = {-1};
  ProgramGraph g = ProgramGraph::from_parents({"x"}, parents);
  for (int n = 2; n <= 4; ++n) CHECK(extract(g, n).empty());
  // Parsed programs always hang below <s>.
  CHECK(extract(fc("x"), 2) == StructureSet{ls(Shape::kPC, {"<s>", "x"})});
}

TEST_CASE("order out of range") {
  CHECK_THROWS_AS(extract(fc("f ( a )"), 1), Error);
  CHECK_THROWS_AS(extract(fc("f ( a )"), 5), Error);
}

TEST_CASE("corpus union") {
  std::vector<ProgramGraph> none;
  CHECK(corpus_structures(none, 2).empty());
  std::vector<ProgramGraph> two = {fc("f ( a )"), fc("f ( b )")};
  StructureSet expected = {ls(Shape::kPC, {"<s>", "f"}), ls(Shape::kPC, {"f", "a"}),
                           ls(Shape::kPC, {"f", "b"})};
  CHECK(corpus_structures(two, 2) == expected);
  std::vector<ProgramGraph> dup = {fc("f ( a , b )"), fc("f ( a , b )")};
  CHECK(corpus_structures(dup, 3) == extract(fc("f ( a , b )"), 3));
}

TEST_CASE("shape filters") {
  StructureSet all = extract(fc("g ( f ( a , b ) )"), 4);
  StructureSet nosib = extract(fc("g ( f ( a , b ) )"), 4, ShapeFilter::kNoSibling);
  StructureSet nopc = extract(fc("g ( f ( a , b ) )"), 4, ShapeFilter::kNoParentChild);
  CHECK(nosib.size() + nopc.size() == all.size());
  for (const auto& s : nosib) CHECK(is_pure_parent_child(s.shape));
  for (const auto& s : nopc) CHECK(has_sibling_edge(s.shape));
  CHECK(filter_shapes(all, ShapeFilter::kNoSibling) == nosib);
}

TEST_CASE("shape names round trip") {
  for (Shape s : kAllShapes) CHECK(shape_from_name(shape_name(s)) == s);
  CHECK(shape_name(Shape::kGPSib4) == "GP-SIB-4");
  CHECK(shape_arity(Shape::kPCSib3) == 3);
  CHECK(to_string(ls(Shape::kPC, {"f", "a"})) == "PC[f,a]");
}

TEST_CASE("matches naive enumeration and is monotone in n") {
  Rng rng(20260101);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 200; ++trial) {
    ProgramGraph g = oracle::random_tree(rng, 1 + static_cast<int>(rng.index(12)),
                                         alphabet, trial % 3 != 0);
    StructureSet prev;
    for (int n = 2; n <= 4; ++n) {
      StructureSet got = extract(g, n);
      CHECK(got == oracle::naive_extract(g, n));
      CHECK(std::includes(got.begin(), got.end(), prev.begin(), prev.end()));
      prev = got;
    }
  }
}

TEST_CASE("corpus union is order independent") {
  std::vector<ProgramGraph> a = {fc("f ( a , b )"), fc("g ( f ( c ) )"), fc("h")};
  std::vector<ProgramGraph> b = {a[2], a[0], a[1]};
  CHECK(corpus_structures(a, 4) == corpus_structures(b, 4));
}

}  // namespace
}  // namespace lsgen
