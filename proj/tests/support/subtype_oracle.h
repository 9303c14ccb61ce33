// Copyright 2026 The Bull Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bull/syntax.h"

namespace bull::testing {

/**
 * Every simple type over the given atoms built with ->, & and | having between
 * 1 and max_leaves leaves, smallest first. Atoms are constants.
 */
std::vector<Term> enumerate_types(const std::vector<std::string> &atoms,
                                  int max_leaves);

/**
 * Declarative subtyping in the intersection/union theory, decided by
 * saturating the axioms and rules over a finite pool of types:
 *
 *   s <= s                  s & t <= s,  s & t <= t
 *   s <= s | t,  t <= s | t
 *   (s -> r) & (s -> t) <= s -> r & t
 *   (s -> r) & (t -> r) <= s | t -> r
 *   s & (t | r) <= (s & t) | (s & r)
 *   r <= s, r <= t  ==>  r <= s & t
 *   s <= r, t <= r  ==>  s | t <= r
 *   s' <= s, t <= t'  ==>  s -> t <= s' -> t'
 *   transitivity
 *
 * A judgment is derivable here when it has a derivation whose types all lie
 * in the pool.
 */
class SubtypeOracle {
 public:
  explicit SubtypeOracle(std::vector<Term> pool);

  bool derivable(const Term &a, const Term &b) const;
  bool contains(const Term &t) const;
  std::size_t size() const { return pool_.size(); }
  int rounds() const { return rounds_; }

 private:
  struct Node {
    TermKind kind;  // kConst, kProd, kInter or kUnion
    int left = -1;
    int right = -1;
  };

  int index_of(const Term &t) const;
  bool get(int i, int j) const { return (rel_[i][j / 64] >> (j % 64)) & 1; }
  bool set(int i, int j);
  bool close_transitively();
  void saturate();

  std::vector<Term> pool_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::uint64_t>> rel_;
  int rounds_ = 0;
};

/** A canonical key for simple types, stable across locations and names. */
std::string type_key(const Term &t);

}  // namespace bull::testing
