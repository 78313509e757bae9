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

#ifndef LSGEN_METRICS_H_
#define LSGEN_METRICS_H_

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lsgen/dataset.h"
#include "lsgen/decision_rules.h"
#include "lsgen/local_structures.h"
#include "lsgen/program_graph.h"
#include "lsgen/splitgen.h"

namespace lsgen {

struct ScoredLabel {
  double score;
  int gold;  // 0 or 1
};

// ROC AUC as the Mann-Whitney statistic: the probability that a random
// positive outscores a random negative, ties counting one half. Throws
// Error(kDegenerateLabels) unless both classes are present.
double auc(std::span<const ScoredLabel> scores);

struct PredictionRecord {
  std::string id;
  std::string model;
  std::string prediction;
  bool correct = false;
};

// Fraction of ids on which at least `quorum` of the M models agree on
// correctness. Throws Error(kRaggedPredictions) unless every id has exactly
// one record per model.
double agreement_rate(std::span<const PredictionRecord> records, int quorum);

// Agreement of independent models with the given accuracies:
// prod p_i + prod (1 - p_i).
double random_agreement(std::span<const double> accuracies);

// Sample Pearson correlation. Throws Error(kInvalidArgument) on length
// mismatch or fewer than two points, Error(kZeroVariance) on a constant side.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Occurrence counts keyed by a canonical rendering of the atom/compound.
using Distribution = std::map<std::string, double>;

struct CompoundDistribution {
  Distribution atoms;
  Distribution compounds;
};

// Atoms are node labels. Compounds are, for every node with children, the
// node with its ordered child list and, when some child has children of
// its own, the node with every child expanded by its ordered child list.
CompoundDistribution compound_counts(std::span<const ProgramGraph> programs);

// 1 - sum_k P(k)^alpha Q(k)^(1-alpha) over the normalized distributions.
// Throws Error(kEmptyCorpus) if either side has zero total weight.
double chernoff_divergence(const Distribution& p, const Distribution& q,
                           double alpha = 0.5);

double compound_divergence(std::span<const ProgramGraph> train,
                           std::span<const ProgramGraph> test,
                           double alpha = 0.5);
double atom_divergence(std::span<const ProgramGraph> train,
                       std::span<const ProgramGraph> test, double alpha = 0.5);

// Mean test-set easiness of a split under a rule trained on its train set.
double split_easiness(const Dataset& dataset, const Split& split,
                      const RuleConfig& rule);

struct ThresholdChoice {
  double threshold;
  double f1;
};

// Threshold among realized scores maximizing F1 of "easy iff score >
// threshold", ties to the lower threshold. Throws Error(kDegenerateLabels).
ThresholdChoice f1_optimal_threshold(std::span<const ScoredLabel> scores);

struct TokenErrorAnalysis {
  bool flagged = false;
  size_t mismatch_index = 0;
};

// First position where the predicted token sequence departs from the gold
// one, and whether some unobserved pair (m1, m2) has m1 among the gold
// symbol tokens before that position and m2 equal to the gold token there.
// Only PC and SIB structures of `unobserved` are considered. Throws
// Error(kIdenticalSequences) when the sequences are equal.
TokenErrorAnalysis token_error_localization(
    std::span<const std::string> gold, std::span<const std::string> predicted,
    const StructureSet& unobserved);

// extract(gold, 2) minus the training corpus's 2-LS set.
StructureSet unobserved_pairs(std::span<const ProgramGraph> train,
                              const ProgramGraph& gold);

// Dataset-specific canonicalization applied before exact match.
class Normalizer {
 public:
  virtual ~Normalizer() = default;
  virtual std::vector<std::string> normalize(
      std::span<const std::string> tokens) const = 0;
};

class IdentityNormalizer : public Normalizer {
 public:
  std::vector<std::string> normalize(
      std::span<const std::string> tokens) const override {
    return {tokens.begin(), tokens.end()};
  }
};

// Sorts the children of the listed symbols (commutative operators, filter
// conditions) by their rendered subtree. Unparseable input is returned
// unchanged so malformed predictions simply fail to match.
class SortedChildrenNormalizer : public Normalizer {
 public:
  SortedChildrenNormalizer(Dialect dialect, std::set<std::string> heads)
      : dialect_(dialect), heads_(std::move(heads)) {}

  std::vector<std::string> normalize(
      std::span<const std::string> tokens) const override;

 private:
  Dialect dialect_;
  std::set<std::string> heads_;
};

bool exact_match(std::span<const std::string> gold,
                 std::span<const std::string> predicted,
                 const Normalizer& normalizer = IdentityNormalizer());
bool exact_match(std::string_view gold, std::string_view predicted,
                 const Normalizer& normalizer = IdentityNormalizer());

}  // namespace lsgen

#endif  // LSGEN_METRICS_H_
