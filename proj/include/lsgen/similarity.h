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

// Distributional symbol similarity and its lift to local structures.
//
// A symbol's context of type c is the set of symbols seen in relation c to
// it across the training programs (parents, children, left siblings, right
// siblings). Two symbols are compared by averaging the Jaccard overlap of
// their context sets over the context types in which at least one of them
// has a non-empty set.

#ifndef LSGEN_SIMILARITY_H_
#define LSGEN_SIMILARITY_H_

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lsgen/local_structures.h"
#include "lsgen/program_graph.h"

namespace lsgen {

enum class ContextType { kParents = 0, kChildren, kLeftSiblings, kRightSiblings };

inline constexpr std::array<ContextType, 4> kContextTypes = {
    ContextType::kParents, ContextType::kChildren, ContextType::kLeftSiblings,
    ContextType::kRightSiblings};

std::string_view context_type_name(ContextType c);

using SymbolSet = std::set<std::string, std::less<>>;

class ContextProfile {
 public:
  ContextProfile() = default;

  // Contexts from every parent-child and consecutive-sibling pair. The
  // "<s>" root counts as a parent.
  static ContextProfile from_programs(std::span<const ProgramGraph> programs);

  // Left/right co-occurrence contexts of flat token sequences; the
  // sequence-baseline analogue of sibling contexts.
  static ContextProfile from_sequences(
      std::span<const std::vector<std::string>> sequences);

  // Empty set for symbols never seen.
  const SymbolSet& context(std::string_view symbol, ContextType c) const;

  bool contains(std::string_view symbol) const;
  size_t symbol_count() const { return contexts_.size(); }

  // {"symbol": {"parents": [...], "children": [...], "left_siblings": [...],
  //  "right_siblings": [...]}, ...} with sorted arrays.
  nlohmann::json to_json() const;

  void add_parent_child(const std::string& parent, const std::string& child);
  void add_left_right(const std::string& left, const std::string& right);

 private:
  std::map<std::string, std::array<SymbolSet, 4>, std::less<>> contexts_;
};

// |a ∩ b| / |a ∪ b|; 0 when both are empty.
double jaccard(const SymbolSet& a, const SymbolSet& b);

double symbol_sim(const ContextProfile& profile, std::string_view m1,
                  std::string_view m2);

// Equal-length label tuples: 1 if identical, symbol_sim of the single
// differing pair if they differ in exactly one position, else 0.
double label_tuple_sim(const ContextProfile& profile,
                       std::span<const std::string> a,
                       std::span<const std::string> b);

// 0 across shapes, otherwise label_tuple_sim over the role-ordered labels.
double structure_sim(const ContextProfile& profile, const LocalStructure& a,
                     const LocalStructure& b);

// Set of tagged label tuples with lookup of one-label-off neighbors. Tags
// keep tuples of different shapes apart.
class NeighborIndex {
 public:
  void insert(int tag, const std::vector<std::string>& labels);
  bool contains(int tag, std::span<const std::string> labels) const;

  // Calls visit(position, stored_label) for every stored tuple with the same
  // tag that differs from `labels` exactly at `position`.
  template <typename Visit>
  void for_each_neighbor(int tag, std::span<const std::string> labels,
                         Visit&& visit) const {
    for (size_t pos = 0; pos < labels.size(); ++pos) {
      auto it = by_wildcard_.find(wildcard_key(tag, labels, pos));
      if (it == by_wildcard_.end()) continue;
      for (const std::string& other : it->second) {
        if (other != labels[pos]) visit(pos, other);
      }
    }
  }

  // Highest label_tuple_sim between `labels` and any stored tuple with the
  // same tag; 0 if there is none.
  double best_similarity(const ContextProfile& profile, int tag,
                         std::span<const std::string> labels) const;

 private:
  static std::string key(int tag, std::span<const std::string> labels);
  static std::string wildcard_key(int tag, std::span<const std::string> labels,
                                  size_t pos);

  std::set<std::string, std::less<>> exact_;
  std::map<std::string, SymbolSet, std::less<>> by_wildcard_;
};

}  // namespace lsgen

#endif  // LSGEN_SIMILARITY_H_
