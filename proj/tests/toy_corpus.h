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


// Small synthetic corpora shared by the split tests and the acceptance
// binary.

#ifndef LSGEN_TESTS_TOY_CORPUS_H_
#define LSGEN_TESTS_TOY_CORPUS_H_

#include <string>
#include <vector>

#include "lsgen/dataset.h"
#include "lsgen/rng.h"
#include "lsgen/splitgen.h"

namespace toy {

// A COVR-flavoured grammar:
//   S -> BP | BS
//   BP -> and ( BS , BS ) | or ( BS , BS )
//   BS -> exists ( REF ) | all ( REF ) | some ( REF )
//   REF -> find ( ENT ) | filter ( ATTR , find ( ENT ) )
//   ENT -> dog | cat | mouse
//   ATTR -> black | white
inline std::vector<lsgen::GrammarRule> covr_grammar() {
  return {
      {"s_pair", "S", {"BP"}},
      {"s_single", "S", {"BS"}},
      {"bp_and", "BP", {"and", "BS", "BS"}},
      {"bp_or", "BP", {"or", "BS", "BS"}},
      {"bs_exists", "BS", {"exists", "REF"}},
      {"bs_all", "BS", {"all", "REF"}},
      {"bs_some", "BS", {"some", "REF"}},
      {"ref_find", "REF", {"find", "ENT"}},
      {"ref_filter", "REF", {"filter", "ATTR", "find", "ENT"}},
      {"ent_dog", "ENT", {"dog"}},
      {"ent_cat", "ENT", {"cat"}},
      {"ent_mouse", "ENT", {"mouse"}},
      {"attr_black", "ATTR", {"black"}},
      {"attr_white", "ATTR", {"white"}},
  };
}

struct Derived {
  std::string program;
  std::vector<std::string> derivation;
};


inline std::string gen_ref(lsgen::Rng& rng, std::vector<std::string>& d) {
  static const std::vector<std::string> ents = {"dog", "cat", "mouse"};
  static const std::vector<std::string> attrs = {"black", "white"};
  const std::string ent = ents[rng.index(ents.size())];
  if (rng.index(3) == 0) {
    const std::string attr = attrs[rng.index(attrs.size())];
    d.push_back("ref_filter");
    d.push_back("attr_" + attr);
    d.push_back("ent_" + ent);
    return "filter ( " + attr + " , find ( " + ent + " ) )";
  }
  d.push_back("ref_find");
  d.push_back("ent_" + ent);
  return "find ( " + ent + " )";
}

inline std::string gen_bs(lsgen::Rng& rng, std::vector<std::string>& d) {
  static const std::vector<std::string> qs = {"exists", "all", "some"};
  const std::string q = qs[rng.index(qs.size())];
  d.push_back("bs_" + q);
  return q + " ( " + gen_ref(rng, d) + " )";
}

inline Derived gen_program(lsgen::Rng& rng) {
  Derived out;
  if (rng.index(3) == 0) {
    out.derivation.push_back("s_single");
    out.program = gen_bs(rng, out.derivation);
    return out;
  }
  const std::string op = rng.index(2) == 0 ? "and" : "or";
  out.derivation.push_back("s_pair");
  out.derivation.push_back("bp_" + op);
  std::string left = gen_bs(rng, out.derivation);
  std::string right = gen_bs(rng, out.derivation);
  out.program = op + " ( " + left + " , " + right + " )";
  return out;
}

inline lsgen::Dataset covr_dataset(uint64_t seed, size_t count) {
  lsgen::Rng rng(seed);
  std::vector<lsgen::Example> examples;
  for (size_t i = 0; i < count; ++i) {
    Derived d = gen_program(rng);
    lsgen::Example ex;
    ex.id = "ex" + std::to_string(i);
    ex.program = d.program;
    ex.derivation = d.derivation;
    examples.push_back(std::move(ex));
  }
  return lsgen::Dataset(std::move(examples), lsgen::Dialect::kFuncComma);
}

// One meaningful pair (BP, BS), two rules each.
inline std::vector<lsgen::GrammarRule> pair_grammar() {
  return {
      {"start", "ROOT", {"BP"}},
      {"bp_and", "BP", {"and", "BS", "BS"}},
      {"bp_or", "BP", {"or", "BS", "BS"}},
      {"bs_exists", "BS", {"exists", "dog"}},
      {"bs_some", "BS", {"some", "dog"}},
  };
}

// Every program of pair_grammar().
inline lsgen::Dataset pair_dataset() {
  std::vector<lsgen::Example> examples;
  for (std::string op : {"and", "or"}) {
    for (std::string a : {"exists", "some"}) {
      for (std::string b : {"exists", "some"}) {
        lsgen::Example ex;
        ex.id = op + "-" + a + "-" + b;
        ex.program = op + " ( " + a + " ( dog ) , " + b + " ( dog ) )";
        ex.derivation = {"start", "bp_" + op, "bs_" + a};
        if (a != b) ex.derivation.push_back("bs_" + b);
        examples.push_back(std::move(ex));
      }
    }
  }
  return lsgen::Dataset(std::move(examples), lsgen::Dialect::kFuncComma);
}

}  // namespace toy

#endif  // LSGEN_TESTS_TOY_CORPUS_H_
