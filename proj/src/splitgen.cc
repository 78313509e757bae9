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
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lsgen/decision_rules.h"
#include "lsgen/error.h"
#include "lsgen/rng.h"
#include "lsgen/similarity.h"

namespace lsgen {

std::string_view split_method_name(SplitMethod method) {
  switch (method) {
    case SplitMethod::kTemplate: return "template";
    case SplitMethod::kGrammar: return "grammar";
    case SplitMethod::kNlsAdversarial: return "nls-adversarial";
    case SplitMethod::kIid: return "iid";
  }
  return "?";
}

std::optional<SplitMethod> split_method_from_name(std::string_view name) {
  for (SplitMethod m : {SplitMethod::kTemplate, SplitMethod::kGrammar,
                        SplitMethod::kNlsAdversarial, SplitMethod::kIid}) {
    if (split_method_name(m) == name) return m;
  }
  return std::nullopt;
}

nlohmann::json split_to_json(const Split& split) {
  return nlohmann::json{{"method", split_method_name(split.method)},
                        {"metadata", split.metadata},
                        {"train", split.train},
                        {"test", split.test}};
}

Split split_from_json(const nlohmann::json& j) {
  Split s;
  try {
    auto method = split_method_from_name(j.at("method").get<std::string>());
    if (!method) throw Error(ErrorCode::kMalformedInput, "unknown split method");
    s.method = *method;
    s.train = j.at("train").get<std::vector<std::string>>();
    s.test = j.at("test").get<std::vector<std::string>>();
    if (j.contains("metadata")) s.metadata = j.at("metadata");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("split file: ") + e.what());
  }
  return s;
}

namespace {

// Distinct symbol labels of a program, "<s>" excluded.
std::vector<std::string> program_symbols(const ProgramGraph& g) {
  std::vector<std::string> out;
  for (NodeId id : g.symbol_order()) out.push_back(g.label(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Test-only symbols of an index-level split.
std::vector<std::string> unseen_symbols(const Dataset& dataset,
                                        std::span<const size_t> train,
                                        std::span<const size_t> test) {
  std::unordered_set<std::string> seen;
  for (size_t i : train) {
    for (NodeId id : dataset.graph(i).symbol_order()) {
      seen.insert(dataset.graph(i).label(id));
    }
  }
  std::set<std::string> unseen;
  for (size_t i : test) {
    for (NodeId id : dataset.graph(i).symbol_order()) {
      const std::string& l = dataset.graph(i).label(id);
      if (!seen.count(l)) unseen.insert(l);
    }
  }
  return {unseen.begin(), unseen.end()};
}

// Validity test for many candidate test sets over one dataset: a symbol is
// test-only iff all of its carriers are in the test set.
class ValidityChecker {
 public:
  explicit ValidityChecker(const Dataset& dataset) {
    symbols_.reserve(dataset.size());
    for (size_t i = 0; i < dataset.size(); ++i) {
      symbols_.push_back(program_symbols(dataset.graph(i)));
      for (const auto& s : symbols_.back()) ++carriers_[s];
    }
  }

  bool valid_test_set(std::span<const size_t> test) const {
    std::unordered_map<std::string_view, size_t> in_test;
    for (size_t i : test) {
      for (const auto& s : symbols_[i]) {
        if (++in_test[s] == carriers_.at(s)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::vector<std::string>> symbols_;
  std::unordered_map<std::string, size_t> carriers_;
};

std::vector<std::string> ids_of(const Dataset& dataset,
                                std::span<const size_t> indices) {
  std::vector<std::string> out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(dataset.example(i).id);
  return out;
}

bool is_number(std::string_view t) {
  size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
  bool digits = false;
  bool dot = false;
  for (; i < t.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(t[i]))) {
      digits = true;
    } else if (t[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

void check_fraction(double f, const char* what) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be in [0,1], got " + std::to_string(f));
  }
}

}  // namespace

SplitValidation validate_split(const Dataset& dataset, const Split& split) {
  SplitValidation v;
  std::vector<size_t> train;
  std::vector<size_t> test;
  std::unordered_set<std::string> train_ids;
  for (const auto& id : split.train) {
    if (auto i = dataset.find(id)) {
      train.push_back(*i);
      train_ids.insert(id);
    } else {
      v.unknown_ids.push_back(id);
    }
  }
  for (const auto& id : split.test) {
    if (auto i = dataset.find(id)) {
      test.push_back(*i);
      if (train_ids.count(id)) v.overlapping_ids.push_back(id);
    } else {
      v.unknown_ids.push_back(id);
    }
  }
  v.unseen_symbols = unseen_symbols(dataset, train, test);
  return v;
}

void AnonymizerMap::add(const std::string& symbol, const std::string& group) {
  map_[symbol] = group;
}

AnonymizerMap AnonymizerMap::from_json(const nlohmann::json& j) {
  AnonymizerMap m;
  if (!j.is_object()) {
    throw Error(ErrorCode::kMalformedInput, "anonymizer must be a JSON object");
  }
  const nlohmann::json& groups = j.contains("groups") ? j.at("groups") : j;
  for (const auto& [group, symbols] : groups.items()) {
    if (group == "numbers" && symbols.is_string()) continue;
    if (!symbols.is_array()) {
      throw Error(ErrorCode::kMalformedInput,
                  "anonymizer group '" + group + "' must be a list of symbols");
    }
    for (const auto& s : symbols) m.add(s.get<std::string>(), group);
  }
  if (auto it = j.find("numbers"); it != j.end() && it->is_string()) {
    m.set_number_group(it->get<std::string>());
  }
  return m;
}

AnonymizerMap AnonymizerMap::covr() {
  AnonymizerMap m;
  for (const char* s : {"dog", "cat", "mouse", "animal"}) m.add(s, "ENTITY");
  for (const char* s : {"chasing", "playing_with", "looking_at"}) m.add(s, "RELATION");
  for (const char* s : {"color", "shape"}) m.add(s, "ATTRTYPE");
  for (const char* s : {"black", "white", "brown", "gray", "round", "square", "triangle"}) {
    m.add(s, "ATTRVAL");
  }
  for (const char* s : {"and", "or"}) m.add(s, "LOGIC");
  m.set_number_group("NUMBER");
  return m;
}

const std::string* AnonymizerMap::group_of(std::string_view token) const {
  if (auto it = map_.find(token); it != map_.end()) return &it->second;
  if (!number_group_.empty() && is_number(token)) return &number_group_;
  return nullptr;
}

std::vector<std::string> AnonymizerMap::conflicts(const Dataset& dataset) const {
  std::set<std::string> groups;
  for (const auto& [symbol, group] : map_) groups.insert(group);
  if (!number_group_.empty()) groups.insert(number_group_);
  std::set<std::string> out;
  for (const auto& g : dataset.graphs()) {
    for (NodeId id : g.symbol_order()) {
      if (groups.count(g.label(id))) out.insert(g.label(id));
    }
  }
  return {out.begin(), out.end()};
}

std::string anonymize(std::span<const std::string> tokens,
                      const AnonymizerMap& map) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    const std::string* g = is_structural_token(t) ? nullptr : map.group_of(t);
    out += g ? *g : t;
  }
  return out;
}

std::string anonymize(std::string_view program, const AnonymizerMap& map) {
  auto tokens = split_tokens(program);
  return anonymize(std::span<const std::string>(tokens), map);
}

std::vector<std::string> example_templates(const Dataset& dataset,
                                           const AnonymizerMap& map) {
  std::vector<std::string> out;
  out.reserve(dataset.size());
  for (const Example& ex : dataset.examples()) {
    out.push_back(ex.template_override ? *ex.template_override
                                       : anonymize(ex.program, map));
  }
  return out;
}

namespace {

struct GroupedSplit {
  std::vector<size_t> train;
  std::vector<size_t> test;
  std::vector<std::string> test_groups;
  int attempt = 0;
};

// Randomly holds out a fraction of the groups, caps each group's size on
// each side, and retries until the split is valid.
GroupedSplit grouped_holdout(const Dataset& dataset,
                             const std::vector<std::string>& keys,
                             double fraction, size_t cap_train, size_t cap_test,
                             Rng& rng, int max_attempts) {
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
  const size_t total = groups.size();
  if (total < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least two distinct templates, got " + std::to_string(total));
  }
  std::vector<const std::pair<const std::string, std::vector<size_t>>*> order;
  for (const auto& g : groups) order.push_back(&g);
  const auto wanted = static_cast<long long>(std::llround(fraction * total));
  const size_t n_test =
      static_cast<size_t>(std::clamp<long long>(wanted, 1, total - 1));

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    rng.shuffle(order);
    GroupedSplit out;
    out.attempt = attempt;
    for (size_t k = 0; k < order.size(); ++k) {
      const bool is_test = k < n_test;
      std::vector<size_t> members = order[k]->second;
      const size_t cap = is_test ? cap_test : cap_train;
      if (members.size() > cap) {
        rng.shuffle(members);
        members.resize(cap);
      }
      auto& side = is_test ? out.test : out.train;
      side.insert(side.end(), members.begin(), members.end());
      if (is_test) out.test_groups.push_back(order[k]->first);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    std::sort(out.test_groups.begin(), out.test_groups.end());
    // Capped-away examples sit on neither side, so check against the
    // actual training set.
    if (!out.test.empty() && !out.train.empty() &&
        unseen_symbols(dataset, out.train, out.test).empty()) {
      return out;
    }
  }
  throw Error(ErrorCode::kNoValidSplitFound,
              "no valid split in " + std::to_string(max_attempts) +
                  " attempts at holdout fraction " + std::to_string(fraction));
}

}  // namespace

Split template_split(const Dataset& dataset, const AnonymizerMap& map,
                     const TemplateSplitConfig& config) {
  check_fraction(config.holdout_fraction, "holdout fraction");
  Rng rng = Rng::substream(config.seed, "template-split");
  GroupedSplit g = grouped_holdout(dataset, example_templates(dataset, map),
                                   config.holdout_fraction, config.k_train,
                                   config.k_test, rng, config.max_attempts);
  Split s;
  s.method = SplitMethod::kTemplate;
  s.train = ids_of(dataset, g.train);
  s.test = ids_of(dataset, g.test);
  s.metadata = {{"holdout_fraction", config.holdout_fraction},
                {"k_train", config.k_train},
                {"k_test", config.k_test},
                {"seed", config.seed},
                {"attempt", g.attempt},
                {"test_templates", g.test_groups}};
  return s;
}

Split iid_split(const Dataset& dataset, double holdout_fraction, uint64_t seed,
                int max_attempts) {
  check_fraction(holdout_fraction, "holdout fraction");
  std::vector<std::string> keys;
  for (const Example& ex : dataset.examples()) keys.push_back(ex.id);
  Rng rng = Rng::substream(seed, "iid-split");
  const size_t no_cap = dataset.size();
  GroupedSplit g = grouped_holdout(dataset, keys, holdout_fraction, no_cap,
                                   no_cap, rng, max_attempts);
  Split s;
  s.method = SplitMethod::kIid;
  s.train = ids_of(dataset, g.train);
  s.test = ids_of(dataset, g.test);
  s.metadata = {{"holdout_fraction", holdout_fraction},
                {"seed", seed},
                {"attempt", g.attempt}};
  return s;
}

std::vector<std::string> meaningful_nonterminals(
    std::span<const GrammarRule> grammar) {
  std::map<std::string, int> lhs_count;
  for (const auto& r : grammar) ++lhs_count[r.lhs];
  std::map<std::string, std::set<std::string>> rhs_rules;
  for (const auto& r : grammar) {
    for (const auto& sym : r.rhs) {
      if (lhs_count.count(sym)) rhs_rules[sym].insert(r.id);
    }
  }
  std::vector<std::string> out;
  for (const auto& [nt, count] : lhs_count) {
    auto it = rhs_rules.find(nt);
    const size_t in_rhs = it == rhs_rules.end() ? 0 : it->second.size();
    if (count >= 2 || in_rhs >= 2) out.push_back(nt);
  }
  return out;
}

std::vector<GrammarCandidate> grammar_split_candidates(
    std::span<const GrammarRule> grammar) {
  const auto meaningful = meaningful_nonterminals(grammar);
  auto rules_of = [&](const std::string& lhs) {
    std::vector<std::string> ids;
    for (const auto& r : grammar) {
      if (r.lhs == lhs) ids.push_back(r.id);
    }
    return ids;
  };
  std::vector<GrammarCandidate> out;
  for (size_t a = 0; a < meaningful.size(); ++a) {
    for (size_t b = a + 1; b < meaningful.size(); ++b) {
      const auto& l1 = meaningful[a];
      const auto& l2 = meaningful[b];
      const auto g1 = rules_of(l1);
      const auto g2 = rules_of(l2);
      std::vector<RulePair> product;
      for (const auto& r1 : g1) {
        for (const auto& r2 : g2) product.emplace_back(r1, r2);
      }
      out.push_back({l1, l2, "product", product});
      for (const auto& p : product) out.push_back({l1, l2, "single", {p}});
      std::vector<std::string> both = g1;
      both.insert(both.end(), g2.begin(), g2.end());
      for (const auto& r : both) {
        GrammarCandidate c{l1, l2, "rule", {}};
        for (const auto& p : product) {
          if (p.first == r || p.second == r) c.pairs.push_back(p);
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

bool derivation_matches(std::span<const std::string> derivation,
                        std::span<const RulePair> pairs) {
  for (const auto& [r1, r2] : pairs) {
    if (std::find(derivation.begin(), derivation.end(), r1) != derivation.end() &&
        std::find(derivation.begin(), derivation.end(), r2) != derivation.end()) {
      return true;
    }
  }
  return false;
}

namespace {

nlohmann::json pairs_json(std::span<const RulePair> pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

std::vector<Split> grammar_splits(const Dataset& dataset,
                                  std::span<const GrammarRule> grammar) {
  for (const Example& ex : dataset.examples()) {
    if (ex.derivation.empty()) {
      throw Error(ErrorCode::kMissingDerivation,
                  "example '" + ex.id + "' has no derivation");
    }
  }
  ValidityChecker checker(dataset);
  std::vector<Split> out;
  std::map<std::vector<size_t>, size_t> by_test_set;
  const auto candidates = grammar_split_candidates(grammar);
  for (size_t k = 0; k < candidates.size(); ++k) {
    const GrammarCandidate& c = candidates[k];
    std::vector<size_t> train;
    std::vector<size_t> test;
    for (size_t i = 0; i < dataset.size(); ++i) {
      (derivation_matches(dataset.example(i).derivation, c.pairs) ? test : train)
          .push_back(i);
    }
    if (test.empty() || train.empty() || !checker.valid_test_set(test)) continue;
    if (auto it = by_test_set.find(test); it != by_test_set.end()) {
      out[it->second].metadata["merged_rule_pairs"].push_back(pairs_json(c.pairs));
      continue;
    }
    by_test_set.emplace(test, out.size());
    Split s;
    s.method = SplitMethod::kGrammar;
    s.train = ids_of(dataset, train);
    s.test = ids_of(dataset, test);
    s.metadata = {{"nonterminals", {c.lhs1, c.lhs2}},
                  {"kind", c.kind},
                  {"candidate", k},
                  {"rule_pairs", pairs_json(c.pairs)},
                  {"merged_rule_pairs", nlohmann::json::array()}};
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

nlohmann::json structure_json(const LocalStructure& s) {
  return {{"shape", shape_name(s.shape)}, {"labels", s.labels}};
}

}  // namespace

std::vector<Split> adversarial_nls_splits(const Dataset& dataset,
                                          const AdversarialConfig& config,
                                          const AnonymizerMap& map) {
  check_fraction(config.similar_fraction, "similar fraction");
  check_fraction(config.max_test_template_fraction, "K");
  if (config.shapes == ShapeFilter::kNoParentChild) {
    throw Error(ErrorCode::kInvalidArgument,
                "adversarial splits support shape filters 'all' and 'nosib'");
  }
  const NlsVariant variant = config.shapes == ShapeFilter::kNoSibling
                                 ? NlsVariant::kNoSib
                                 : NlsVariant::kFull;

  std::vector<StructureSet> per_example;
  per_example.reserve(dataset.size());
  std::map<LocalStructure, std::vector<size_t>> carriers;
  for (size_t i = 0; i < dataset.size(); ++i) {
    per_example.push_back(extract(dataset.graph(i), config.n, config.shapes));
    for (const auto& s : per_example.back()) carriers[s].push_back(i);
  }
  const ContextProfile profile = ContextProfile::from_programs(dataset.graphs());
  NeighborIndex index;
  for (const auto& [s, _] : carriers) index.insert(static_cast<int>(s.shape), s.labels);

  const auto templates = example_templates(dataset, map);
  const size_t template_total = std::set<std::string>(templates.begin(), templates.end()).size();
  ValidityChecker checker(dataset);

  struct Found {
    Split split;
    std::vector<size_t> train;
    std::vector<size_t> test;
  };
  std::vector<Found> found;
  std::map<std::vector<size_t>, size_t> by_test_set;

  for (const auto& [seed_structure, _] : carriers) {
    if (config.seed_structures && !config.seed_structures->count(seed_structure)) continue;

    // Structures with positive similarity to the seed differ from it in one
    // label, so the neighbor index finds all of them.
    std::vector<std::pair<LocalStructure, double>> similar;
    std::set<double> thresholds = {0.0};
    index.for_each_neighbor(
        static_cast<int>(seed_structure.shape), seed_structure.labels,
        [&](size_t pos, const std::string& other) {
          double sim = symbol_sim(profile, seed_structure.labels[pos], other);
          if (sim <= 0.0) return;
          LocalStructure s = seed_structure;
          s.labels[pos] = other;
          similar.emplace_back(std::move(s), sim);
          thresholds.insert(sim);
        });
    std::sort(similar.begin(), similar.end());

    for (double t : thresholds) {
      std::vector<LocalStructure> held;
      for (const auto& [s, sim] : similar) {
        if (sim > t) held.push_back(s);
      }
      if (config.similar_fraction < 1.0) {
        Rng rng = Rng::substream(config.seed, "adversarial/" + to_string(seed_structure));
        rng.shuffle(held);
        held.resize(static_cast<size_t>(std::floor(config.similar_fraction * held.size())));
        std::sort(held.begin(), held.end());
      }
      held.insert(held.begin(), seed_structure);

      std::set<size_t> test_set;
      for (const auto& s : held) {
        const auto& c = carriers.at(s);
        test_set.insert(c.begin(), c.end());
      }
      std::vector<size_t> test(test_set.begin(), test_set.end());
      if (test.size() == dataset.size()) continue;
      std::set<std::string> test_templates;
      for (size_t i : test) test_templates.insert(templates[i]);
      const double template_fraction =
          static_cast<double>(test_templates.size()) / template_total;
      if (template_fraction > config.max_test_template_fraction) continue;
      if (!checker.valid_test_set(test)) continue;

      if (auto it = by_test_set.find(test); it != by_test_set.end()) {
        found[it->second].split.metadata["merged_seeds"].push_back(
            structure_json(seed_structure));
        break;
      }
      std::vector<size_t> train;
      for (size_t i = 0; i < dataset.size(); ++i) {
        if (!test_set.count(i)) train.push_back(i);
      }
      Split s;
      s.method = SplitMethod::kNlsAdversarial;
      s.train = ids_of(dataset, train);
      s.test = ids_of(dataset, test);
      nlohmann::json held_json = nlohmann::json::array();
      for (const auto& h : held) held_json.push_back(structure_json(h));
      s.metadata = {{"seed_structure", structure_json(seed_structure)},
                    {"threshold", t},
                    {"held_out_structures", held_json},
                    {"test_template_fraction", template_fraction},
                    {"n", config.n},
                    {"shapes", config.shapes == ShapeFilter::kAll ? "all" : "nosib"},
                    {"similar_fraction", config.similar_fraction},
                    {"merged_seeds", nlohmann::json::array()}};
      by_test_set.emplace(test, found.size());
      found.push_back({std::move(s), std::move(train), std::move(test)});
      break;
    }
  }

  std::vector<Split> out;
  for (auto& f : found) {
    const auto train_graphs = dataset.graphs_of(f.train);
    NlsScorer scorer(train_graphs, config.n, variant);
    double total = 0.0;
    for (size_t i : f.test) total += scorer.easiness(dataset.graph(i));
    const double mean = total / f.test.size();
    f.split.metadata["mean_easiness"] = mean;
    f.split.metadata["tau"] = config.tau;
    if (mean > config.tau) continue;
    out.push_back(std::move(f.split));
  }
  return out;
}

}  // namespace lsgen
