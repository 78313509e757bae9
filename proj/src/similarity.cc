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

#include "lsgen/similarity.h"

#include <algorithm>

namespace lsgen {

std::string_view context_type_name(ContextType c) {
  switch (c) {
    case ContextType::kParents: return "parents";
    case ContextType::kChildren: return "children";
    case ContextType::kLeftSiblings: return "left_siblings";
    case ContextType::kRightSiblings: return "right_siblings";
  }
  return "?";
}

namespace {
constexpr size_t idx(ContextType c) { return static_cast<size_t>(c); }
}  // namespace

void ContextProfile::add_parent_child(const std::string& parent,
                                      const std::string& child) {
  contexts_[child][idx(ContextType::kParents)].insert(parent);
  contexts_[parent][idx(ContextType::kChildren)].insert(child);
}

void ContextProfile::add_left_right(const std::string& left,
                                    const std::string& right) {
  contexts_[right][idx(ContextType::kLeftSiblings)].insert(left);
  contexts_[left][idx(ContextType::kRightSiblings)].insert(right);
}

ContextProfile ContextProfile::from_programs(
    std::span<const ProgramGraph> programs) {
  ContextProfile profile;
  for (const ProgramGraph& g : programs) {
    for (auto [p, c] : g.parent_child_edges()) {
      profile.add_parent_child(g.label(p), g.label(c));
    }
    for (SiblingEdge e : g.sibling_edges()) {
      profile.add_left_right(g.label(e.left), g.label(e.right));
    }
  }
  return profile;
}

ContextProfile ContextProfile::from_sequences(
    std::span<const std::vector<std::string>> sequences) {
  ContextProfile profile;
  for (const auto& seq : sequences) {
    for (size_t i = 1; i < seq.size(); ++i) {
      profile.add_left_right(seq[i - 1], seq[i]);
    }
  }
  return profile;
}

const SymbolSet& ContextProfile::context(std::string_view symbol,
                                         ContextType c) const {
  static const SymbolSet kEmpty;
  auto it = contexts_.find(symbol);
  return it == contexts_.end() ? kEmpty : it->second[idx(c)];
}

bool ContextProfile::contains(std::string_view symbol) const {
  return contexts_.find(symbol) != contexts_.end();
}

nlohmann::json ContextProfile::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [symbol, sets] : contexts_) {
    nlohmann::json entry = nlohmann::json::object();
    for (ContextType c : kContextTypes) {
      entry[std::string(context_type_name(c))] = sets[idx(c)];
    }
    out[symbol] = std::move(entry);
  }
  return out;
}

double jaccard(const SymbolSet& a, const SymbolSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  // Both sets are sorted; merge-walk to count the intersection.
  size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) /
         static_cast<double>(a.size() + b.size() - common);
}

double symbol_sim(const ContextProfile& profile, std::string_view m1,
                  std::string_view m2) {
  double total = 0.0;
  int relevant = 0;
  for (ContextType c : kContextTypes) {
    const SymbolSet& a = profile.context(m1, c);
    const SymbolSet& b = profile.context(m2, c);
    if (a.empty() && b.empty()) continue;
    total += jaccard(a, b);
    ++relevant;
  }
  return relevant == 0 ? 0.0 : total / relevant;
}

double label_tuple_sim(const ContextProfile& profile,
                       std::span<const std::string> a,
                       std::span<const std::string> b) {
  if (a.size() != b.size()) return 0.0;
  int diff_at = -1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (diff_at >= 0) return 0.0;
    diff_at = static_cast<int>(i);
  }
  if (diff_at < 0) return 1.0;
  return symbol_sim(profile, a[diff_at], b[diff_at]);
}

double structure_sim(const ContextProfile& profile, const LocalStructure& a,
                     const LocalStructure& b) {
  if (a.shape != b.shape) return 0.0;
  return label_tuple_sim(profile, a.labels, b.labels);
}

std::string NeighborIndex::key(int tag, std::span<const std::string> labels) {
  std::string k = std::to_string(tag);
  for (const auto& l : labels) {
    k += '\x1f';
    k += l;
  }
  return k;
}

std::string NeighborIndex::wildcard_key(int tag,
                                        std::span<const std::string> labels,
                                        size_t pos) {
  std::string k = std::to_string(tag) + '\x1e' + std::to_string(pos);
  for (size_t i = 0; i < labels.size(); ++i) {
    k += '\x1f';
    if (i != pos) k += labels[i];
  }
  return k;
}

void NeighborIndex::insert(int tag, const std::vector<std::string>& labels) {
  if (!exact_.insert(key(tag, labels)).second) return;
  for (size_t pos = 0; pos < labels.size(); ++pos) {
    by_wildcard_[wildcard_key(tag, labels, pos)].insert(labels[pos]);
  }
}

bool NeighborIndex::contains(int tag,
                             std::span<const std::string> labels) const {
  return exact_.find(key(tag, labels)) != exact_.end();
}

double NeighborIndex::best_similarity(
    const ContextProfile& profile, int tag,
    std::span<const std::string> labels) const {
  if (contains(tag, labels)) return 1.0;
  double best = 0.0;
  for_each_neighbor(tag, labels, [&](size_t pos, const std::string& other) {
    if (best < 1.0) best = std::max(best, symbol_sim(profile, labels[pos], other));
  });
  return best;
}

}  // namespace lsgen
