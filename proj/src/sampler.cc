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
#include <map>

#include "lsgen/error.h"
#include "lsgen/rng.h"

namespace lsgen {

namespace {

void check_request(size_t pool_size, size_t budget) {
  if (pool_size == 0) throw Error(ErrorCode::kEmptyPool, "sampling pool is empty");
  if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
}

class StructureSampler {
 public:
  StructureSampler(std::span<const StructureSet> pool, uint64_t seed)
      : rng_(Rng::substream(seed, "sampler/structures")),
        selected_(pool.size(), false) {
    std::map<LocalStructure, size_t> ids;
    for (size_t e = 0; e < pool.size(); ++e) {
      for (const auto& s : pool[e]) {
        auto [it, inserted] = ids.emplace(s, carriers_.size());
        if (inserted) carriers_.emplace_back();
        carriers_[it->second].push_back(e);
      }
    }
    example_structures_.resize(pool.size());
    for (size_t e = 0; e < pool.size(); ++e) {
      for (const auto& s : pool[e]) example_structures_[e].push_back(ids.at(s));
    }
    observed_.assign(carriers_.size(), false);
    unseen_.resize(carriers_.size());
    unseen_pos_.resize(carriers_.size());
    for (size_t s = 0; s < carriers_.size(); ++s) unseen_[s] = unseen_pos_[s] = s;
  }

  std::vector<size_t> run(size_t budget) {
    const size_t target = std::min(budget, selected_.size());
    std::vector<size_t> order;
    order.reserve(target);
    while (order.size() < target) {
      size_t e = next_example();
      select(e);
      order.push_back(e);
    }
    return order;
  }

 private:
  size_t next_example() {
    if (!unseen_.empty()) {
      // Carriers of an unseen structure are never selected yet.
      const auto& c = carriers_[unseen_[rng_.index(unseen_.size())]];
      return c[rng_.index(c.size())];
    }
    // Saturated: any structure, resampling when its carriers are used up.
    for (size_t tries = 0; tries < carriers_.size(); ++tries) {
      const auto& c = carriers_[rng_.index(carriers_.size())];
      std::vector<size_t> open;
      for (size_t e : c) {
        if (!selected_[e]) open.push_back(e);
      }
      if (!open.empty()) return open[rng_.index(open.size())];
    }
    std::vector<size_t> open;
    for (size_t e = 0; e < selected_.size(); ++e) {
      if (!selected_[e]) open.push_back(e);
    }
    return open[rng_.index(open.size())];
  }

  void select(size_t e) {
    selected_[e] = true;
    for (size_t s : example_structures_[e]) {
      if (observed_[s]) continue;
      observed_[s] = true;
      // Swap-remove from the unseen list.
      size_t pos = unseen_pos_[s];
      size_t last = unseen_.back();
      unseen_[pos] = last;
      unseen_pos_[last] = pos;
      unseen_.pop_back();
    }
  }

  Rng rng_;
  std::vector<bool> selected_;
  std::vector<std::vector<size_t>> carriers_;
  std::vector<std::vector<size_t>> example_structures_;
  std::vector<bool> observed_;
  std::vector<size_t> unseen_;
  std::vector<size_t> unseen_pos_;
};

}  // namespace

std::vector<size_t> sample_by_structures(std::span<const StructureSet> pool,
                                         size_t budget, uint64_t seed) {
  check_request(pool.size(), budget);
  return StructureSampler(pool, seed).run(budget);
}

std::vector<size_t> sample_random(size_t pool_size, size_t budget,
                                  uint64_t seed) {
  check_request(pool_size, budget);
  std::vector<size_t> order(pool_size);
  for (size_t i = 0; i < pool_size; ++i) order[i] = i;
  Rng rng = Rng::substream(seed, "sampler/random");
  rng.shuffle(order);
  order.resize(std::min(budget, pool_size));
  return order;
}

double coverage(std::span<const StructureSet> pool,
                std::span<const size_t> selected) {
  StructureSet universe;
  for (const auto& s : pool) universe.insert(s.begin(), s.end());
  if (universe.empty()) return 0.0;
  StructureSet seen;
  for (size_t e : selected) seen.insert(pool[e].begin(), pool[e].end());
  return static_cast<double>(seen.size()) / universe.size();
}

namespace {

std::vector<std::string> ids_of(const Dataset& d, std::span<const size_t> idx) {
  std::vector<std::string> out;
  for (size_t i : idx) out.push_back(d.example(i).id);
  return out;
}

}  // namespace

std::vector<std::string> sample_by_structures(const Dataset& pool, int n,
                                              size_t budget, uint64_t seed) {
  std::vector<StructureSet> structures;
  structures.reserve(pool.size());
  for (const auto& g : pool.graphs()) structures.push_back(extract(g, n));
  return ids_of(pool, sample_by_structures(structures, budget, seed));
}

std::vector<std::string> sample_random(const Dataset& pool, size_t budget,
                                       uint64_t seed) {
  return ids_of(pool, sample_random(pool.size(), budget, seed));
}

}  // namespace lsgen
