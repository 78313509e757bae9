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


#include "lsgen/sampler.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lsgen/error.h"
#include "toy_corpus.h"

namespace lsgen {
namespace {

LocalStructure pc(const std::string& a, const std::string& b) {
  return {Shape::kPC, {a, b}};
}

// k examples, example i carrying only its own two structures.
std::vector<StructureSet> disjoint_pool(size_t k) {
  std::vector<StructureSet> pool;
  for (size_t i = 0; i < k; ++i) {
    const std::string s = std::to_string(i);
    pool.push_back({pc("p" + s, "a"), pc("p" + s, "b")});
  }
  return pool;
}

TEST_CASE("budget covering the pool returns a permutation") {
  auto pool = disjoint_pool(8);
  auto picked = sample_by_structures(pool, 20, 1);
  CHECK(picked.size() == 8);
  CHECK(std::set<size_t>(picked.begin(), picked.end()).size() == 8);
  CHECK(coverage(pool, picked) == 1.0);
}

TEST_CASE("single pick covers exactly its structures") {
  auto pool = disjoint_pool(5);
  auto picked = sample_by_structures(pool, 1, 3);
  REQUIRE(picked.size() == 1);
  CHECK(coverage(pool, picked) == doctest::Approx(1.0 / 5));
}

TEST_CASE("coverage arithmetic") {
  auto pool = disjoint_pool(10);
  std::vector<size_t> none;
  std::vector<size_t> three = {0, 4, 7};
  std::vector<size_t> all = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK(coverage(pool, none) == 0.0);
  CHECK(coverage(pool, three) == doctest::Approx(0.3));
  CHECK(coverage(pool, all) == 1.0);
  std::vector<StructureSet> empty_sets(3);
  CHECK(coverage(empty_sets, three) == 0.0);
}

TEST_CASE("errors") {
  std::vector<StructureSet> empty;
  CHECK_THROWS_AS(sample_by_structures(empty, 3, 0), Error);
  CHECK_THROWS_AS(sample_by_structures(disjoint_pool(2), 0, 0), Error);
  CHECK_THROWS_AS(sample_random(0, 3, 0), Error);
}

TEST_CASE("random sampler") {
  auto a = sample_random(50, 50, 7);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  CHECK(sample_random(50, 10, 7) == sample_random(50, 10, 7));
  CHECK(sample_random(50, 10, 7) != sample_random(50, 10, 8));
}

TEST_CASE("each early step grows the observed set") {
  Dataset d = toy::covr_dataset(4, 300);
  std::vector<StructureSet> pool;
  for (const auto& g : d.graphs()) pool.push_back(extract(g, 2));
  StructureSet universe;
  for (const auto& s : pool) universe.insert(s.begin(), s.end());
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto picked = sample_by_structures(pool, 300, seed);
    CHECK(std::set<size_t>(picked.begin(), picked.end()).size() == picked.size());
    CHECK(picked == sample_by_structures(pool, 300, seed));
    StructureSet seen;
    for (size_t e : picked) {
      bool unseen_left = seen.size() < universe.size();
      size_t before = seen.size();
      seen.insert(pool[e].begin(), pool[e].end());
      if (unseen_left) CHECK(seen.size() > before);
    }
  }
}

TEST_CASE("dataset wrappers return ids") {
  Dataset d = toy::covr_dataset(5, 40);
  auto ids = sample_by_structures(d, 2, 10, 1);
  CHECK(ids.size() == 10);
  for (const auto& id : ids) CHECK(d.find(id).has_value());
  CHECK(sample_random(d, 5, 2).size() == 5);
}

}  // namespace
}  // namespace lsgen
