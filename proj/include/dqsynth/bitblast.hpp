// Copyright 2026 The dqsynth Authors. All rights reserved.
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

#ifndef DQSYNTH_BITBLAST_HPP
#define DQSYNTH_BITBLAST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dqsynth/dqf.hpp"

namespace dqsynth {

// Maps each word-level variable to the propositional variables carrying its
// bits, least significant bit first. Booleans occupy a single bit.
struct BitMapEntry {
  std::string name;
  Sort sort = Sort::boolean();
  std::vector<int> bits; // bits[k] carries bit k (LSB = index 0)
};

struct BitMap {
  std::vector<BitMapEntry> entries;
  // propositional id -> (variable name, bit index)
  std::map<int, std::pair<std::string, uint32_t>> reverse;

  const BitMapEntry *find(const std::string &name) const;
  void add(const std::string &name, Sort sort, const std::vector<int> &bits);
};

// Bits of one existential word y_i together with its dependency set H'_i,
// both expressed as propositional variable ids.
struct ExistentialGroup {
  std::string source;    // name of the originating existential variable
  std::vector<int> bits; // LSB first
  std::vector<int> deps; // bits of the dependency set, in declaration order
};

// Propositional DQBF: forall X' exists^{H'_1} Y'_1 ... exists^{X'} V . C
// where V collects the auxiliary encoding variables, each depending on all
// universal bits.
struct DqbfInstance {
  int num_vars = 0;
  std::vector<int> universal_bits; // X', in declaration order, LSB first
  std::vector<ExistentialGroup> existentials;
  std::vector<int> aux_bits; // V, in allocation order
  std::vector<std::vector<int>> clauses;
  BitMap bitmap;
  std::vector<DqfExistential> origin; // word-level provenance, may be empty
};

// Bit-blasts the body into CNF with a deterministic variable numbering:
// universal bits first (declaration order), then each existential word's
// bits, then the auxiliary variables in gate-introduction order. Every gate
// is encoded with full input/output equivalence, so the auxiliary variables
// are functions of the bits they are built from.
DqbfInstance blast(const DqfFormula &formula);

struct ClauseStats {
  int vars = 0;
  int clauses = 0;
  int aux = 0;
};

ClauseStats clause_stats(const DqbfInstance &instance);

} // namespace dqsynth

#endif // DQSYNTH_BITBLAST_HPP
