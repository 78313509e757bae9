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

// Budgeted training-set selection.
//
// The structure sampler repeatedly draws a local structure not yet covered
// by the selection (or any structure once everything is covered) and adds a
// random unselected example that contains it.

#ifndef LSGEN_SAMPLER_H_
#define LSGEN_SAMPLER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsgen/dataset.h"
#include "lsgen/local_structures.h"

namespace lsgen {

// Indices into `pool` in selection order. Throws Error(kEmptyPool) for an
// empty pool and Error(kInvalidArgument) for a zero budget.
std::vector<size_t> sample_by_structures(std::span<const StructureSet> pool,
                                         size_t budget, uint64_t seed);

// Uniform sample without replacement of size min(budget, |pool|).
std::vector<size_t> sample_random(size_t pool_size, size_t budget,
                                  uint64_t seed);

// Fraction of the pool's distinct structures covered by the selection; 0 for
// a pool without structures.
double coverage(std::span<const StructureSet> pool,
                std::span<const size_t> selected);

// Dataset-level wrappers returning example ids.
std::vector<std::string> sample_by_structures(const Dataset& pool, int n,
                                              size_t budget, uint64_t seed);
std::vector<std::string> sample_random(const Dataset& pool, size_t budget,
                                       uint64_t seed);

}  // namespace lsgen

#endif  // LSGEN_SAMPLER_H_
