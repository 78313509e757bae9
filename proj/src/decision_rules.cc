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

#include "lsgen/decision_rules.h"

#include <algorithm>

#include "lsgen/error.h"
#include "lsgen/rng.h"

namespace lsgen {

namespace {

constexpr struct {
  RuleKind rule;
  std::string_view name;
} kRuleNames[] = {
    {RuleKind::kNls, "nls"},         {RuleKind::kNlsNoSib, "nls-nosib"},
    {RuleKind::kNlsNoPc, "nls-nopc"}, {RuleKind::kNlsNoSim, "nls-nosim"},
    {RuleKind::kNgram, "ngram"},     {RuleKind::kLength, "length"},
    {RuleKind::kRandom, "random"},
};

bool is_structure_rule(RuleKind r) {
  return r == RuleKind::kNls || r == RuleKind::kNlsNoSib ||
         r == RuleKind::kNlsNoPc || r == RuleKind::kNlsNoSim;
}

NlsVariant variant_of(RuleKind r) {
  switch (r) {
    case RuleKind::kNlsNoSib: return NlsVariant::kNoSib;
    case RuleKind::kNlsNoPc: return NlsVariant::kNoPc;
    case RuleKind::kNlsNoSim: return NlsVariant::kNoSim;
    default: return NlsVariant::kFull;
  }
}

void require_training(size_t n) {
  if (n == 0) throw Error(ErrorCode::kEmptyTrainingSet, "training set is empty");
}

constexpr int kNgramTag = 0;

}  // namespace

std::string_view rule_name(RuleKind rule) {
  for (const auto& r : kRuleNames) {
    if (r.rule == rule) return r.name;
  }
  return "?";
}

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (const auto& r : kRuleNames) {
    if (r.name == name) return r.rule;
  }
  return std::nullopt;
}

void RuleConfig::validate() const {
  if (is_structure_rule(rule) && (n < 2 || n > 4)) {
    throw Error(ErrorCode::kInvalidArgument,
                "structure rules need n in {2,3,4}, got " + std::to_string(n));
  }
  if (rule == RuleKind::kNgram && n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "ngram rule needs n >= 2, got " + std::to_string(n));
  }
}

std::string RuleConfig::display_name() const {
  const std::string order = std::to_string(n);
  switch (rule) {
    case RuleKind::kNls: return order + "-LS";
    case RuleKind::kNlsNoSib: return order + "-LS-NoSib";
    case RuleKind::kNlsNoPc: return order + "-LS-NoPC";
    case RuleKind::kNlsNoSim: return order + "-LS-NoSim";
    case RuleKind::kNgram: return n == 2 ? "2-Bigram" : order + "-Gram";
    case RuleKind::kLength: return "Length";
    case RuleKind::kRandom: return "Random";
  }
  return "?";
}

ShapeFilter variant_filter(NlsVariant variant) {
  switch (variant) {
    case NlsVariant::kNoSib: return ShapeFilter::kNoSibling;
    case NlsVariant::kNoPc: return ShapeFilter::kNoParentChild;
    default: return ShapeFilter::kAll;
  }
}

NlsScorer::NlsScorer(std::span<const ProgramGraph> train, int n,
                     NlsVariant variant)
    : n_(n), variant_(variant) {
  require_training(train.size());
  profile_ = ContextProfile::from_programs(train);
  index(corpus_structures(train, n, variant_filter(variant)));
}

NlsScorer::NlsScorer(const StructureSet& observed, ContextProfile profile,
                     int n, NlsVariant variant)
    : n_(n), variant_(variant), profile_(std::move(profile)) {
  index(observed);
}

void NlsScorer::index(const StructureSet& observed) {
  const ShapeFilter filter = variant_filter(variant_);
  for (const LocalStructure& s : observed) {
    if (shape_arity(s.shape) <= n_ && shape_allowed(s.shape, filter)) {
      observed_.insert(static_cast<int>(s.shape), s.labels);
    }
  }
}

double NlsScorer::structure_easiness(const LocalStructure& s) const {
  const int tag = static_cast<int>(s.shape);
  if (variant_ == NlsVariant::kNoSim) {
    return observed_.contains(tag, s.labels) ? 1.0 : 0.0;
  }
  return observed_.best_similarity(profile_, tag, s.labels);
}

double NlsScorer::easiness(const StructureSet& test_structures) const {
  const ShapeFilter filter = variant_filter(variant_);
  double easiness = 1.0;
  for (const LocalStructure& s : test_structures) {
    if (shape_arity(s.shape) > n_ || !shape_allowed(s.shape, filter)) continue;
    easiness = std::min(easiness, structure_easiness(s));
    if (easiness == 0.0) break;
  }
  return easiness;
}

double NlsScorer::easiness(const ProgramGraph& test) const {
  return easiness(extract(test, n_, variant_filter(variant_)));
}

double easiness_nls(std::span<const ProgramGraph> train,
                    const ProgramGraph& test_program, int n,
                    NlsVariant variant) {
  return NlsScorer(train, n, variant).easiness(test_program);
}

std::vector<std::vector<std::string>> ngrams(std::span<const std::string> tokens,
                                             int n) {
  std::vector<std::vector<std::string>> out;
  if (n <= 0 || tokens.size() < static_cast<size_t>(n)) return out;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    out.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
  }
  return out;
}

NgramScorer::NgramScorer(std::span<const std::vector<std::string>> train,
                         int n)
    : n_(n) {
  require_training(train.size());
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ngram order must be >= 2");
  }
  profile_ = ContextProfile::from_sequences(train);
  for (const auto& seq : train) {
    for (auto& g : ngrams(seq, n)) observed_.insert(kNgramTag, g);
  }
}

double NgramScorer::easiness(std::span<const std::string> test) const {
  double easiness = 1.0;
  for (const auto& g : ngrams(test, n_)) {
    easiness = std::min(easiness, observed_.best_similarity(profile_, kNgramTag, g));
    if (easiness == 0.0) break;
  }
  return easiness;
}

double easiness_ngram(std::span<const std::vector<std::string>> train,
                      std::span<const std::string> test, int n) {
  return NgramScorer(train, n).easiness(test);
}

int symbol_count(const ProgramGraph& graph) {
  return static_cast<int>(graph.symbol_order().size());
}

namespace {

int longest(std::span<const ProgramGraph> train) {
  int m = 0;
  for (const auto& g : train) m = std::max(m, symbol_count(g));
  return m;
}

double length_rule(int test_symbols, int longest_train) {
  if (longest_train == 0) return 0.0;
  return std::max(1.0 - static_cast<double>(test_symbols) / longest_train, 0.0);
}

}  // namespace

double easiness_length(std::span<const ProgramGraph> train,
                       const ProgramGraph& test_program) {
  require_training(train.size());
  return length_rule(symbol_count(test_program), longest(train));
}

double easiness_random(uint64_t seed, std::string_view example_id) {
  return Rng(mix64(seed) ^ fnv1a64(example_id)).uniform();
}

EasinessModel::EasinessModel(std::span<const ProgramGraph> train,
                             const RuleConfig& config)
    : config_(config) {
  config_.validate();
  if (config_.rule != RuleKind::kRandom) require_training(train.size());
  if (is_structure_rule(config_.rule)) {
    nls_ = std::make_unique<NlsScorer>(train, config_.n, variant_of(config_.rule));
  } else if (config_.rule == RuleKind::kNgram) {
    std::vector<std::vector<std::string>> seqs;
    seqs.reserve(train.size());
    for (const auto& g : train) {
      seqs.push_back(symbol_sequence(g, config_.include_structural_tokens));
    }
    ngram_ = std::make_unique<NgramScorer>(seqs, config_.n);
  } else if (config_.rule == RuleKind::kLength) {
    max_train_symbols_ = longest(train);
  }
}

EasinessModel::~EasinessModel() = default;
EasinessModel::EasinessModel(EasinessModel&&) noexcept = default;
EasinessModel& EasinessModel::operator=(EasinessModel&&) noexcept = default;

double EasinessModel::score(const ProgramGraph& test,
                            std::string_view example_id) const {
  if (nls_) return nls_->easiness(test);
  if (ngram_) {
    return ngram_->easiness(symbol_sequence(test, config_.include_structural_tokens));
  }
  if (config_.rule == RuleKind::kLength) {
    return length_rule(symbol_count(test), max_train_symbols_);
  }
  return easiness_random(config_.seed, example_id);
}

std::optional<int> majority_label(std::span<const bool> correct) {
  const size_t right = std::count(correct.begin(), correct.end(), true);
  const size_t wrong = correct.size() - right;
  if (2 * right > correct.size()) return 1;
  if (2 * wrong > correct.size()) return 0;
  return std::nullopt;
}

}  // namespace lsgen
