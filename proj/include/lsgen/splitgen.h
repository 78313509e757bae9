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

// Compositional train/test split generation.
//
// Three generators are provided:
//  - template: examples grouped by anonymized program template, templates
//    randomly held out, per-template example caps on each side;
//  - grammar: hold out every example whose derivation uses both rules of a
//    chosen rule pair, enumerating rule-pair sets over pairs of meaningful
//    non-terminals;
//  - adversarial: hold out every example containing a seed local structure
//    or any structure similar enough to it.
// Every emitted split is valid: each symbol of a test program also occurs in
// some training program.

#ifndef LSGEN_SPLITGEN_H_
#define LSGEN_SPLITGEN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lsgen/dataset.h"
#include "lsgen/local_structures.h"

namespace lsgen {

enum class SplitMethod { kTemplate, kGrammar, kNlsAdversarial, kIid };

std::string_view split_method_name(SplitMethod method);
std::optional<SplitMethod> split_method_from_name(std::string_view name);

struct Split {
  SplitMethod method = SplitMethod::kIid;
  std::vector<std::string> train;
  std::vector<std::string> test;
  nlohmann::json metadata = nlohmann::json::object();
};

// {"method": ..., "metadata": ..., "train": [...], "test": [...]}
nlohmann::json split_to_json(const Split& split);
Split split_from_json(const nlohmann::json& j);

struct SplitValidation {
  std::vector<std::string> unseen_symbols;   // sorted
  std::vector<std::string> overlapping_ids;  // in both train and test
  std::vector<std::string> unknown_ids;      // not in the dataset

  bool ok() const {
    return unseen_symbols.empty() && overlapping_ids.empty() &&
           unknown_ids.empty();
  }
};

SplitValidation validate_split(const Dataset& dataset, const Split& split);

// Symbol -> group constant.
class AnonymizerMap {
 public:
  void add(const std::string& symbol, const std::string& group);

  // Replace every numeric token by this constant.
  void set_number_group(std::string group) { number_group_ = std::move(group); }

  // {"groups": {"ENTITY": ["dog", ...], ...}, "numbers": "NUMBER"}; a bare
  // object of groups is accepted as well.
  static AnonymizerMap from_json(const nlohmann::json& j);

  // Symbol groups of the COVR functional language.
  static AnonymizerMap covr();

  // nullptr when the token is not anonymized.
  const std::string* group_of(std::string_view token) const;

  bool empty() const { return map_.empty() && number_group_.empty(); }

  // Group constants that also occur as symbols in the dataset.
  std::vector<std::string> conflicts(const Dataset& dataset) const;

 private:
  std::map<std::string, std::string, std::less<>> map_;
  std::string number_group_;
};

std::string anonymize(std::span<const std::string> tokens,
                      const AnonymizerMap& map);
std::string anonymize(std::string_view program, const AnonymizerMap& map);

// Template per example: the example's template override if present, else
// the anonymized program.
std::vector<std::string> example_templates(const Dataset& dataset,
                                           const AnonymizerMap& map);

struct TemplateSplitConfig {
  double holdout_fraction = 0.2;
  size_t k_train = 1000;
  size_t k_test = 10;
  uint64_t seed = 0;
  int max_attempts = 1000;
};

// Throws Error(kInvalidArgument) with fewer than two templates and
// Error(kNoValidSplitFound) when every attempt yields an invalid split.
Split template_split(const Dataset& dataset, const AnonymizerMap& map,
                     const TemplateSplitConfig& config);

// Random example-level holdout with the same validity retry loop.
Split iid_split(const Dataset& dataset, double holdout_fraction, uint64_t seed,
                int max_attempts = 1000);

struct GrammarRule {
  std::string id;
  std::string lhs;
  std::vector<std::string> rhs;
};

// Non-terminals that are the left-hand side of at least two rules, or occur
// in the right-hand side of at least two distinct rules. Sorted.
std::vector<std::string> meaningful_nonterminals(
    std::span<const GrammarRule> grammar);

using RulePair = std::pair<std::string, std::string>;

struct GrammarCandidate {
  std::string lhs1;
  std::string lhs2;
  std::string kind;  // "product", "single" or "rule"
  std::vector<RulePair> pairs;
};

// For each pair of meaningful non-terminals (lexicographic), the full
// product of their rules, each single pair, then for each rule of either
// side every product pair that uses it.
std::vector<GrammarCandidate> grammar_split_candidates(
    std::span<const GrammarRule> grammar);

// True when the derivation uses both rules of some pair.
bool derivation_matches(std::span<const std::string> derivation,
                        std::span<const RulePair> pairs);

// Candidates turned into valid splits; candidates with identical test sets
// are merged into the first. Throws Error(kMissingDerivation) if an example
// has no derivation.
std::vector<Split> grammar_splits(const Dataset& dataset,
                                  std::span<const GrammarRule> grammar);

struct AdversarialConfig {
  int n = 2;
  ShapeFilter shapes = ShapeFilter::kAll;
  double similar_fraction = 1.0;
  double max_test_template_fraction = 0.3;
  double tau = 1.0;  // discard splits with mean test easiness above this
  uint64_t seed = 0;
  std::optional<StructureSet> seed_structures;  // default: all structures
};

std::vector<Split> adversarial_nls_splits(const Dataset& dataset,
                                          const AdversarialConfig& config,
                                          const AnonymizerMap& map = {});

}  // namespace lsgen

#endif  // LSGEN_SPLITGEN_H_
