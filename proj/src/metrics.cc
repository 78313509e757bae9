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

#include "lsgen/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsgen/error.h"

namespace lsgen {

namespace {

void require_both_classes(std::span<const ScoredLabel> scores) {
  bool pos = false;
  bool neg = false;
  for (const auto& s : scores) {
    if (s.gold != 0 && s.gold != 1) {
      throw Error(ErrorCode::kInvalidArgument, "gold labels must be 0 or 1");
    }
    (s.gold == 1 ? pos : neg) = true;
  }
  if (!pos || !neg) {
    throw Error(ErrorCode::kDegenerateLabels,
                "need at least one positive and one negative label");
  }
}

}  // namespace

double auc(std::span<const ScoredLabel> scores) {
  require_both_classes(scores);
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a].score < scores[b].score; });
  // Midranks (1-based) for tied groups.
  double positive_rank_sum = 0.0;
  size_t positives = 0;
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j < order.size() && scores[order[j]].score == scores[order[i]].score) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) {
      if (scores[order[k]].gold == 1) {
        positive_rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(scores.size() - positives);
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * negatives);
}

double agreement_rate(std::span<const PredictionRecord> records, int quorum) {
  std::set<std::string> models;
  std::map<std::string, std::map<std::string, bool>> by_id;
  for (const auto& r : records) {
    models.insert(r.model);
    if (!by_id[r.id].emplace(r.model, r.correct).second) {
      throw Error(ErrorCode::kRaggedPredictions,
                  "duplicate prediction for id '" + r.id + "' model '" + r.model + "'");
    }
  }
  if (by_id.empty()) throw Error(ErrorCode::kRaggedPredictions, "no predictions");
  const int m = static_cast<int>(models.size());
  if (quorum < 1 || quorum > m) {
    throw Error(ErrorCode::kInvalidArgument,
                "quorum must be in [1," + std::to_string(m) + "]");
  }
  size_t agree = 0;
  for (const auto& [id, outcomes] : by_id) {
    if (static_cast<int>(outcomes.size()) != m) {
      throw Error(ErrorCode::kRaggedPredictions,
                  "id '" + id + "' has " + std::to_string(outcomes.size()) +
                      " predictions, expected " + std::to_string(m));
    }
    int right = 0;
    for (const auto& [model, ok] : outcomes) right += ok ? 1 : 0;
    if (right >= quorum || m - right >= quorum) ++agree;
  }
  return static_cast<double>(agree) / by_id.size();
}

double random_agreement(std::span<const double> accuracies) {
  double all_right = 1.0;
  double all_wrong = 1.0;
  for (double p : accuracies) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "accuracy outside [0,1]");
    }
    all_right *= p;
    all_wrong *= 1.0 - p;
  }
  return all_right + all_wrong;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "pearson needs two equal-length series of at least 2 points");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "pearson: constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CompoundDistribution compound_counts(std::span<const ProgramGraph> programs) {
  CompoundDistribution out;
  for (const ProgramGraph& g : programs) {
    for (NodeId v = 0; v < g.size(); ++v) {
      out.atoms[g.label(v)] += 1.0;
      auto children = g.children(v);
      if (children.empty()) continue;
      std::string shallow = g.label(v) + " (";
      std::string deep = shallow;
      bool has_grandchildren = false;
      for (NodeId c : children) {
        shallow += ' ' + g.label(c);
        deep += ' ' + g.label(c);
        auto grand = g.children(c);
        if (grand.empty()) continue;
        has_grandchildren = true;
        deep += " (";
        for (NodeId gc : grand) deep += ' ' + g.label(gc);
        deep += " )";
      }
      shallow += " )";
      deep += " )";
      out.compounds[shallow] += 1.0;
      if (has_grandchildren) out.compounds[deep] += 1.0;
    }
  }
  return out;
}

double chernoff_divergence(const Distribution& p, const Distribution& q,
                           double alpha) {
  double p_total = 0.0;
  double q_total = 0.0;
  for (const auto& [k, w] : p) p_total += w;
  for (const auto& [k, w] : q) q_total += w;
  if (p_total <= 0.0 || q_total <= 0.0) {
    throw Error(ErrorCode::kEmptyCorpus, "divergence of an empty distribution");
  }
  double coefficient = 0.0;
  for (const auto& [k, w] : p) {
    auto it = q.find(k);
    if (it == q.end() || it->second <= 0.0 || w <= 0.0) continue;
    coefficient += std::pow(w / p_total, alpha) * std::pow(it->second / q_total, 1.0 - alpha);
  }
  return std::clamp(1.0 - coefficient, 0.0, 1.0);
}

namespace {

void require_corpus(size_t n, const char* side) {
  if (n == 0) {
    throw Error(ErrorCode::kEmptyCorpus, std::string(side) + " corpus is empty");
  }
}

}  // namespace

double compound_divergence(std::span<const ProgramGraph> train,
                           std::span<const ProgramGraph> test, double alpha) {
  require_corpus(train.size(), "train");
  require_corpus(test.size(), "test");
  return chernoff_divergence(compound_counts(train).compounds,
                             compound_counts(test).compounds, alpha);
}

double atom_divergence(std::span<const ProgramGraph> train,
                       std::span<const ProgramGraph> test, double alpha) {
  require_corpus(train.size(), "train");
  require_corpus(test.size(), "test");
  return chernoff_divergence(compound_counts(train).atoms,
                             compound_counts(test).atoms, alpha);
}

double split_easiness(const Dataset& dataset, const Split& split,
                      const RuleConfig& rule) {
  if (split.test.empty()) throw Error(ErrorCode::kEmptyTestSet, "split has no test examples");
  const auto train_idx = dataset.indices_of(split.train);
  const auto test_idx = dataset.indices_of(split.test);
  const auto train = dataset.graphs_of(train_idx);
  EasinessModel model(train, rule);
  double total = 0.0;
  for (size_t i : test_idx) total += model.score(dataset.graph(i), dataset.example(i).id);
  return total / test_idx.size();
}

ThresholdChoice f1_optimal_threshold(std::span<const ScoredLabel> scores) {
  require_both_classes(scores);
  std::vector<double> candidates;
  for (const auto& s : scores) candidates.push_back(s.score);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  ThresholdChoice best{candidates.front(), -1.0};
  for (double t : candidates) {
    size_t tp = 0, fp = 0, fn = 0;
    for (const auto& s : scores) {
      const bool predicted = s.score > t;
      if (predicted && s.gold == 1) ++tp;
      if (predicted && s.gold == 0) ++fp;
      if (!predicted && s.gold == 1) ++fn;
    }
    const double denom = static_cast<double>(2 * tp + fp + fn);
    const double f1 = denom == 0.0 ? 0.0 : 2.0 * tp / denom;
    if (f1 > best.f1) best = {t, f1};  // ascending sweep keeps the lowest on ties
  }
  return best;
}

TokenErrorAnalysis token_error_localization(
    std::span<const std::string> gold, std::span<const std::string> predicted,
    const StructureSet& unobserved) {
  const size_t common = std::min(gold.size(), predicted.size());
  size_t i = 0;
  while (i < common && gold[i] == predicted[i]) ++i;
  if (i == gold.size() && i == predicted.size()) {
    throw Error(ErrorCode::kIdenticalSequences, "prediction equals gold");
  }
  TokenErrorAnalysis out;
  out.mismatch_index = i;
  if (i >= gold.size()) return out;
  std::set<std::string_view> prefix;
  for (size_t j = 0; j < i; ++j) {
    if (!is_structural_token(gold[j])) prefix.insert(gold[j]);
  }
  for (const auto& s : unobserved) {
    if (s.shape != Shape::kPC && s.shape != Shape::kSib) continue;
    if (s.labels[1] == gold[i] && prefix.count(s.labels[0])) {
      out.flagged = true;
      break;
    }
  }
  return out;
}

StructureSet unobserved_pairs(std::span<const ProgramGraph> train,
                              const ProgramGraph& gold) {
  const StructureSet observed = corpus_structures(train, 2);
  StructureSet out;
  for (auto& s : extract(gold, 2)) {
    if (!observed.count(s)) out.insert(s);
  }
  return out;
}

namespace {

void render_sorted(const ProgramGraph& g, NodeId id, Dialect dialect,
                   const std::set<std::string>& heads,
                   std::vector<std::string>& out) {
  std::vector<std::vector<std::string>> parts;
  for (NodeId c : g.children(id)) {
    parts.emplace_back();
    render_sorted(g, c, dialect, heads, parts.back());
  }
  if (heads.count(g.label(id))) std::sort(parts.begin(), parts.end());
  if (parts.empty()) {
    out.push_back(g.label(id));
    return;
  }
  if (dialect == Dialect::kFuncComma) {
    out.push_back(g.label(id));
    out.emplace_back("(");
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out.emplace_back(",");
      out.insert(out.end(), parts[i].begin(), parts[i].end());
    }
    out.emplace_back(")");
  } else {
    out.emplace_back("(");
    out.push_back(g.label(id));
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    out.emplace_back(")");
  }
}

}  // namespace

std::vector<std::string> SortedChildrenNormalizer::normalize(
    std::span<const std::string> tokens) const {
  std::optional<ProgramGraph> g;
  try {
    g = parse(tokens, dialect_);
  } catch (const Error&) {
    return {tokens.begin(), tokens.end()};
  }
  std::vector<std::string> out;
  for (NodeId c : g->children(g->root())) render_sorted(*g, c, dialect_, heads_, out);
  return out;
}

bool exact_match(std::span<const std::string> gold,
                 std::span<const std::string> predicted,
                 const Normalizer& normalizer) {
  return normalizer.normalize(gold) == normalizer.normalize(predicted);
}

bool exact_match(std::string_view gold, std::string_view predicted,
                 const Normalizer& normalizer) {
  const auto g = split_tokens(gold);
  const auto p = split_tokens(predicted);
  return exact_match(std::span<const std::string>(g),
                     std::span<const std::string>(p), normalizer);
}

}  // namespace lsgen
