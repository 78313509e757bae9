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

// Instance easiness predictors.
//
// The structure rule scores a test program by its hardest local structure:
//
//   easiness = min over test structures s of max over training structures o
//              of structure_sim(s, o)
//
// so a single unobserved structure with no similar observed counterpart
// drives the score to 0. Baselines replace structures with token n-grams,
// score by program length, or draw a seeded uniform number.

#ifndef LSGEN_DECISION_RULES_H_
#define LSGEN_DECISION_RULES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lsgen/local_structures.h"
#include "lsgen/program_graph.h"
#include "lsgen/similarity.h"

namespace lsgen {

enum class RuleKind { kNls, kNlsNoSib, kNlsNoPc, kNlsNoSim, kNgram, kLength, kRandom };

std::string_view rule_name(RuleKind rule);  // "nls", "nls-nosib", ...
std::optional<RuleKind> rule_from_name(std::string_view name);

struct RuleConfig {
  RuleKind rule = RuleKind::kNls;
  int n = 2;
  uint64_t seed = 0;
  bool include_structural_tokens = true;

  // Throws Error(kInvalidArgument) when n is out of range for the rule.
  void validate() const;

  // Display label such as "2-LS", "3-LS-NoSib", "2-Bigram", "Length".
  std::string display_name() const;
};

enum class NlsVariant { kFull, kNoSib, kNoPc, kNoSim };

ShapeFilter variant_filter(NlsVariant variant);

// Structure rule with the training side precomputed. Scoring is read-only
// and may be shared across threads.
class NlsScorer {
 public:
  // Throws Error(kEmptyTrainingSet) when train is empty.
  NlsScorer(std::span<const ProgramGraph> train, int n, NlsVariant variant);

  // Explicit observed set and profile, e.g. to hold similarity fixed while
  // the observed set varies.
  NlsScorer(const StructureSet& observed, ContextProfile profile, int n,
            NlsVariant variant);

  double easiness(const ProgramGraph& test) const;

  // Over an already extracted test structure set. Structures whose shape
  // the variant ignores are skipped.
  double easiness(const StructureSet& test_structures) const;

  // max over observed o of structure_sim(s, o).
  double structure_easiness(const LocalStructure& s) const;

  const ContextProfile& profile() const { return profile_; }
  int order() const { return n_; }
  NlsVariant variant() const { return variant_; }

 private:
  void index(const StructureSet& observed);

  int n_;
  NlsVariant variant_;
  ContextProfile profile_;
  NeighborIndex observed_;
};

double easiness_nls(std::span<const ProgramGraph> train,
                    const ProgramGraph& test_program, int n,
                    NlsVariant variant = NlsVariant::kFull);

// n-grams of a token sequence; empty when the sequence is shorter than n.
std::vector<std::vector<std::string>> ngrams(std::span<const std::string> tokens,
                                             int n);

class NgramScorer {
 public:
  // Throws Error(kEmptyTrainingSet) when train is empty.
  NgramScorer(std::span<const std::vector<std::string>> train, int n);

  double easiness(std::span<const std::string> test) const;

 private:
  int n_;
  ContextProfile profile_;
  NeighborIndex observed_;
};

double easiness_ngram(std::span<const std::vector<std::string>> train,
                      std::span<const std::string> test, int n);

// Number of symbol nodes, "<s>" excluded.
int symbol_count(const ProgramGraph& graph);

double easiness_length(std::span<const ProgramGraph> train,
                       const ProgramGraph& test_program);

// Deterministic in (seed, example_id), uniform on [0, 1).
double easiness_random(uint64_t seed, std::string_view example_id);

// Any rule behind one interface, trained once per training set.
class EasinessModel {
 public:
  EasinessModel(std::span<const ProgramGraph> train, const RuleConfig& config);
  ~EasinessModel();
  EasinessModel(EasinessModel&&) noexcept;
  EasinessModel& operator=(EasinessModel&&) noexcept;

  double score(const ProgramGraph& test, std::string_view example_id) const;
  const RuleConfig& config() const { return config_; }

 private:
  RuleConfig config_;
  int max_train_symbols_ = 0;
  std::unique_ptr<NlsScorer> nls_;
  std::unique_ptr<NgramScorer> ngram_;
};

struct ScoredInstance {
  std::string id;
  double easiness = 0.0;
  std::optional<int> gold;  // 1 easy, 0 hard
  std::string rule;
};

// Majority exact-match label: 1 if strictly more than half of the outcomes
// are correct, 0 if strictly more than half are wrong, nullopt otherwise.
std::optional<int> majority_label(std::span<const bool> correct);

}  // namespace lsgen

#endif  // LSGEN_DECISION_RULES_H_
