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


#include "lsgen/splitgen.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "lsgen/error.h"
#include "lsgen/local_structures.h"
#include "lsgen/decision_rules.h"
#include "toy_corpus.h"

namespace lsgen {
namespace {

using Strings = std::vector<std::string>;

Dataset make(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::vector<Example> ex;
  for (const auto& [id, program] : rows) ex.push_back({id, "", program, {}, {}});
  return Dataset(std::move(ex), Dialect::kFuncComma);
}

// Ten templates over f, g and an entity slot, each seen with dog and cat.
Dataset ten_templates(size_t per_template = 4) {
  const Strings shapes = {"f ( E )",         "g ( E )",         "f ( g ( E ) )",
                          "g ( f ( E ) )",   "f ( f ( E ) )",   "g ( g ( E ) )",
                          "f ( E , E )",     "g ( E , E )",     "f ( g ( E ) , E )",
                          "g ( f ( E ) , E )"};
  std::vector<Example> ex;
  for (size_t t = 0; t < shapes.size(); ++t) {
    for (size_t k = 0; k < per_template; ++k) {
      std::string p = shapes[t];
      const std::string ent = k % 2 ? "dog" : "cat";
      for (size_t pos; (pos = p.find('E')) != std::string::npos;) p.replace(pos, 1, ent);
      ex.push_back({"t" + std::to_string(t) + "-" + std::to_string(k), "", p, {}, {}});
    }
  }
  return Dataset(std::move(ex), Dialect::kFuncComma);
}

std::set<std::string> symbols_of(const Dataset& d, const Strings& ids) {
  std::set<std::string> out;
  for (size_t i : d.indices_of(ids)) {
    for (NodeId v : d.graph(i).symbol_order()) out.insert(d.graph(i).label(v));
  }
  return out;
}

TEST_CASE("anonymize") {
  AnonymizerMap covr = AnonymizerMap::covr();
  CHECK(anonymize("filter ( black , find ( cat ) )", covr) ==
        "filter ( ATTRVAL , find ( ENTITY ) )");
  CHECK(anonymize("count ( find ( dog ) ) , 3", covr).find("NUMBER") != std::string::npos);
  CHECK(anonymize("filter ( black , find ( cat ) )", AnonymizerMap{}) ==
        "filter ( black , find ( cat ) )");
  CHECK(anonymize("exists ( find ( thing ) )", covr) == "exists ( find ( thing ) )");
}

TEST_CASE("anonymizer json forms") {
  auto a = AnonymizerMap::from_json(
      nlohmann::json::parse(R"({"groups": {"ENT": ["dog"]}, "numbers": "NUM"})"));
  CHECK(*a.group_of("dog") == "ENT");
  CHECK(*a.group_of("12") == "NUM");
  CHECK(a.group_of("cat") == nullptr);
  auto b = AnonymizerMap::from_json(nlohmann::json::parse(R"({"ENT": ["cat"]})"));
  CHECK(*b.group_of("cat") == "ENT");
  CHECK_THROWS_AS(AnonymizerMap::from_json(nlohmann::json::parse("[1]")), Error);
  CHECK_THROWS_AS(AnonymizerMap::from_json(nlohmann::json::parse(R"({"ENT": "cat"})")),
                  Error);
  Dataset d = make({{"a", "f ( ENT )"}});
  CHECK(b.conflicts(d) == Strings{"ENT"});
}

TEST_CASE("validate split") {
  Dataset d = make({{"a", "f ( a )"}, {"b", "f ( b )"}, {"c", "f ( a , b )"},
                    {"d", "f ( b , a )"}});
  CHECK(validate_split(d, {SplitMethod::kIid, {"a"}, {"b"}, {}}).unseen_symbols == Strings{"b"});
  CHECK(validate_split(d, {SplitMethod::kIid, {"a", "b"}, {"a"}, {}}).overlapping_ids ==
        Strings{"a"});
  CHECK(validate_split(d, {SplitMethod::kIid, {"c"}, {"d"}, {}}).ok());
  CHECK(validate_split(d, {SplitMethod::kIid, {"c"}, {"zz"}, {}}).unknown_ids == Strings{"zz"});
}

TEST_CASE("split json round trip") {
  Split s{SplitMethod::kTemplate, {"a", "b"}, {"c"}, {{"seed", 3}}};
  Split back = split_from_json(split_to_json(s));
  CHECK(back.method == s.method);
  CHECK(back.train == s.train);
  CHECK(back.test == s.test);
  CHECK(back.metadata == s.metadata);
  CHECK(split_method_from_name("nls-adversarial") == SplitMethod::kNlsAdversarial);
}

TEST_CASE("template split holds out the requested share of templates") {
  Dataset d = ten_templates();
  AnonymizerMap covr = AnonymizerMap::covr();
  auto templates = example_templates(d, covr);
  CHECK(std::set<std::string>(templates.begin(), templates.end()).size() == 10);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    TemplateSplitConfig cfg;
    cfg.seed = seed;
    Split s = template_split(d, covr, cfg);
    CHECK(s.metadata["test_templates"].size() == 2);
    CHECK(validate_split(d, s).ok());
    std::set<std::string> test_t;
    std::set<std::string> train_t;
    for (size_t i : d.indices_of(s.test)) test_t.insert(templates[i]);
    for (size_t i : d.indices_of(s.train)) train_t.insert(templates[i]);
    CHECK(test_t.size() == 2);
    for (const auto& t : test_t) CHECK_FALSE(train_t.count(t));
  }
  TemplateSplitConfig cfg;
  cfg.seed = 4;
  CHECK(split_to_json(template_split(d, covr, cfg)) == split_to_json(template_split(d, covr, cfg)));
}

TEST_CASE("template caps") {
  std::vector<Example> ex;
  for (int i = 0; i < 1500; ++i) ex.push_back({"big" + std::to_string(i), "", "f ( dog )", {}, {}});
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < 30; ++i) {
      std::string p = t == 0 ? "g ( cat )" : t == 1 ? "f ( g ( cat ) )" : t == 2 ? "g ( f ( dog ) )" : "f ( f ( cat ) )";
      ex.push_back({"t" + std::to_string(t) + "-" + std::to_string(i), "", p, {}, {}});
    }
  }
  Dataset d(std::move(ex), Dialect::kFuncComma);
  auto templates = example_templates(d, AnonymizerMap::covr());
  for (uint64_t seed = 0; seed < 10; ++seed) {
    TemplateSplitConfig cfg;
    cfg.seed = seed;
    Split s = template_split(d, AnonymizerMap::covr(), cfg);
    std::map<std::string, size_t> train_count;
    std::map<std::string, size_t> test_count;
    for (size_t i : d.indices_of(s.train)) ++train_count[templates[i]];
    for (size_t i : d.indices_of(s.test)) ++test_count[templates[i]];
    for (const auto& [t, c] : train_count) CHECK(c <= 1000);
    for (const auto& [t, c] : test_count) CHECK(c <= 10);
    CHECK(validate_split(d, s).ok());
  }
}

TEST_CASE("a template owning a symbol is never held out") {
  // h only occurs in template 0.
  Dataset d = make({{"a0", "h ( f ( dog ) )"}, {"a1", "h ( f ( cat ) )"},
                    {"b0", "f ( dog )"}, {"b1", "f ( cat )"},
                    {"c0", "g ( dog )"}, {"c1", "g ( cat )"},
                    {"d0", "f ( g ( dog ) )"}, {"d1", "g ( f ( cat ) )"}});
  AnonymizerMap covr = AnonymizerMap::covr();
  for (uint64_t seed = 0; seed < 40; ++seed) {
    TemplateSplitConfig cfg;
    cfg.seed = seed;
    cfg.holdout_fraction = 0.4;
    Split s = template_split(d, covr, cfg);
    CHECK(std::find(s.test.begin(), s.test.end(), "a0") == s.test.end());
    CHECK(validate_split(d, s).ok());
  }
}

TEST_CASE("template split failures") {
  AnonymizerMap covr = AnonymizerMap::covr();
  Dataset one = make({{"a", "f ( dog )"}, {"b", "f ( cat )"}});
  CHECK_THROWS_AS(template_split(one, covr, {}), Error);
  Dataset unique = make({{"a", "f ( dog )"}, {"b", "g ( dog )"}, {"c", "h ( dog )"}});
  TemplateSplitConfig cfg;
  cfg.max_attempts = 20;
  try {
    template_split(unique, covr, cfg);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoValidSplitFound);
  }
}

TEST_CASE("iid split") {
  Dataset d = ten_templates();
  Split s = iid_split(d, 0.25, 1);
  CHECK(s.test.size() == 10);
  CHECK(s.train.size() == 30);
  CHECK(validate_split(d, s).ok());
}

TEST_CASE("meaningful non-terminals") {
  std::vector<GrammarRule> single = {{"r1", "S", {"X"}}, {"r2", "X", {"count", "Y"}},
                                     {"r3", "Y", {"a"}}, {"r4", "Y", {"b"}}};
  // X: one rule, one RHS. Y: two rules.
  CHECK(meaningful_nonterminals(single) == Strings{"Y"});
  std::vector<GrammarRule> shared = {{"r1", "S", {"X"}}, {"r2", "T", {"X"}},
                                     {"r3", "X", {"a"}}};
  CHECK(meaningful_nonterminals(shared) == Strings{"X"});
}

TEST_CASE("candidate stream for one pair") {
  auto grammar = toy::pair_grammar();
  auto cands = grammar_split_candidates(grammar);
  REQUIRE(cands.size() == 9);
  CHECK(cands[0].kind == "product");
  CHECK(cands[0].pairs.size() == 4);
  for (int i = 1; i <= 4; ++i) CHECK(cands[i].pairs.size() == 1);
  for (int i = 5; i <= 8; ++i) {
    CHECK(cands[i].kind == "rule");
    CHECK(cands[i].pairs.size() == 2);
  }
}

TEST_CASE("grammar split on a single pair") {
  Dataset d = toy::pair_dataset();
  auto grammar = toy::pair_grammar();
  auto splits = grammar_splits(d, grammar);
  // Only the four singletons survive: the product takes everything and each
  // row/column set removes a symbol from train.
  CHECK(splits.size() == 4);
  for (const auto& s : splits) {
    CHECK(s.metadata["kind"] == "single");
    CHECK(s.metadata["nonterminals"] == nlohmann::json::array({"BP", "BS"}));
    CHECK(validate_split(d, s).ok());
  }
}

TEST_CASE("grammar splits by direct scan") {
  Dataset d = toy::covr_dataset(1, 300);
  auto grammar = toy::covr_grammar();
  auto splits = grammar_splits(d, grammar);
  REQUIRE_FALSE(splits.empty());
  size_t merged = 0;
  for (const auto& s : splits) {
    CHECK(validate_split(d, s).ok());
    std::vector<RulePair> pairs;
    for (const auto& p : s.metadata["rule_pairs"]) pairs.emplace_back(p[0], p[1]);
    std::set<std::string> test(s.test.begin(), s.test.end());
    for (const auto& ex : d.examples()) {
      CHECK(derivation_matches(ex.derivation, pairs) == (test.count(ex.id) > 0));
    }
    for (const auto& m : s.metadata["merged_rule_pairs"]) {
      ++merged;
      std::vector<RulePair> other;
      for (const auto& p : m) other.emplace_back(p[0], p[1]);
      for (const auto& ex : d.examples()) {
        CHECK(derivation_matches(ex.derivation, other) == (test.count(ex.id) > 0));
      }
    }
  }
  CHECK(merged > 0);
  // or over exists.
  for (const auto& s : splits) {
    if (s.metadata["rule_pairs"] != nlohmann::json::parse(R"([["bp_or","bs_exists"]])")) continue;
    std::set<std::string> test(s.test.begin(), s.test.end());
    for (size_t i = 0; i < d.size(); ++i) {
      bool under_or = false;
      const auto& g = d.graph(i);
      for (NodeId v = 1; v < g.size(); ++v) {
        under_or |= g.label(v) == "exists" && g.label(g.parent(v)) == "or";
      }
      CHECK(under_or == (test.count(d.example(i).id) > 0));
    }
  }
}

TEST_CASE("grammar split needs derivations") {
  Dataset d = make({{"a", "f ( a )"}});
  auto grammar = toy::pair_grammar();
  try {
    grammar_splits(d, grammar);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingDerivation);
  }
}

TEST_CASE("adversarial splits hold out every similar structure") {
  Dataset d = toy::covr_dataset(2, 200);
  AdversarialConfig cfg;
  auto splits = adversarial_nls_splits(d, cfg, AnonymizerMap::covr());
  REQUIRE_FALSE(splits.empty());
  for (const auto& s : splits) {
    CHECK(validate_split(d, s).ok());
    StructureSet held;
    for (const auto& h : s.metadata["held_out_structures"]) {
      held.insert({*shape_from_name(h["shape"].get<std::string>()), h["labels"]});
    }
    CHECK(s.metadata["test_template_fraction"].get<double>() <= 0.3);
    for (size_t i : d.indices_of(s.train)) {
      for (const auto& st : extract(d.graph(i), cfg.n)) CHECK_FALSE(held.count(st));
    }
    // Every test example carries a held-out structure.
    for (size_t i : d.indices_of(s.test)) {
      auto own = extract(d.graph(i), cfg.n);
      bool carries = false;
      for (const auto& h : held) carries |= own.count(h) > 0;
      CHECK(carries);
    }
  }
}

TEST_CASE("isolated held-out structure makes every test instance unseen") {
  // PC[and,exists] has no similar neighbor: nothing else hangs under and.
  std::vector<std::pair<std::string, std::string>> rows;
  for (int i = 0; i < 6; ++i) {
    rows.push_back({"o" + std::to_string(i), "or ( some ( dog ) , exists ( cat ) )"});
    rows.push_back({"p" + std::to_string(i), "or ( exists ( dog ) )"});
    rows.push_back({"q" + std::to_string(i), "not ( and ( count ( cat ) ) )"});
  }
  rows.push_back({"x", "not ( and ( exists ( dog ) ) )"});
  Dataset d = make(rows);
  AdversarialConfig cfg;
  cfg.max_test_template_fraction = 1.0;
  cfg.seed_structures = StructureSet{{Shape::kPC, {"and", "exists"}}};
  auto splits = adversarial_nls_splits(d, cfg);
  REQUIRE(splits.size() == 1);
  const Split& s = splits[0];
  CHECK(s.test == Strings{"x"});
  auto train = d.graphs_of(d.indices_of(s.train));
  for (size_t i : d.indices_of(s.test)) {
    CHECK(easiness_nls(train, d.graph(i), 2, NlsVariant::kNoSim) == 0.0);
  }
}

TEST_CASE("adversarial constraints") {
  Dataset d = toy::covr_dataset(3, 150);
  AdversarialConfig cfg;
  cfg.max_test_template_fraction = 0.0;
  CHECK(adversarial_nls_splits(d, cfg).empty());
  cfg.shapes = ShapeFilter::kNoParentChild;
  CHECK_THROWS_AS(adversarial_nls_splits(d, cfg), Error);
  AdversarialConfig strict;
  strict.tau = 0.0;
  for (const auto& s : adversarial_nls_splits(d, strict)) {
    CHECK(s.metadata["mean_easiness"].get<double>() <= 0.0);
  }
  AdversarialConfig half;
  half.similar_fraction = 0.5;
  half.seed = 9;
  auto a = adversarial_nls_splits(d, half);
  auto b = adversarial_nls_splits(d, half);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(split_to_json(a[i]) == split_to_json(b[i]));
    CHECK(validate_split(d, a[i]).ok());
  }
}

}  // namespace
}  // namespace lsgen
