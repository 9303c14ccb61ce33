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


#include "subtype_oracle.h"

#include <stdexcept>
#include <utility>

namespace bull::testing {

std::string type_key(const Term &t) {
  switch (t.kind()) {
    case TermKind::kConst:
      return t.name();
    case TermKind::kProd:
      return "(" + type_key(t.domain()) + ">" + type_key(t.body()) + ")";
    case TermKind::kInter:
      return "(" + type_key(t.left()) + "&" + type_key(t.right()) + ")";
    case TermKind::kUnion:
      return "(" + type_key(t.left()) + "|" + type_key(t.right()) + ")";
    default:
      throw std::invalid_argument("not a simple type: " + debug_string(t));
  }
}

std::vector<Term> enumerate_types(const std::vector<std::string> &atoms,
                                  int max_leaves) {
  // by_leaves[n] holds the types with exactly n leaves.
  std::vector<std::vector<Term>> by_leaves(max_leaves + 1);
  for (const std::string &a : atoms) by_leaves[1].push_back(mk_const({}, a));
  for (int n = 2; n <= max_leaves; ++n) {
    for (int l = 1; l < n; ++l) {
      for (const Term &x : by_leaves[l]) {
        for (const Term &y : by_leaves[n - l]) {
          by_leaves[n].push_back(mk_arrow({}, x, y));
          by_leaves[n].push_back(mk_inter({}, x, y));
          by_leaves[n].push_back(mk_union({}, x, y));
        }
      }
    }
  }
  std::vector<Term> out;
  for (auto &level : by_leaves) {
    for (auto &t : level) out.push_back(std::move(t));
  }
  return out;
}

SubtypeOracle::SubtypeOracle(std::vector<Term> pool) : pool_(std::move(pool)) {
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    index_.emplace(type_key(pool_[i]), static_cast<int>(i));
  }
  nodes_.resize(pool_.size());
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    const Term &t = pool_[i];
    Node &n = nodes_[i];
    n.kind = t.kind();
    if (t.is(TermKind::kProd)) {
      n.left = index_of(t.domain());
      n.right = index_of(t.body());
    } else if (t.is(TermKind::kInter) || t.is(TermKind::kUnion)) {
      n.left = index_of(t.left());
      n.right = index_of(t.right());
    }
  }
  saturate();
}

int SubtypeOracle::index_of(const Term &t) const {
  auto it = index_.find(type_key(t));
  return it == index_.end() ? -1 : it->second;
}

bool SubtypeOracle::contains(const Term &t) const { return index_of(t) >= 0; }

bool SubtypeOracle::derivable(const Term &a, const Term &b) const {
  int i = index_of(a);
  int j = index_of(b);
  if (i < 0 || j < 0) throw std::out_of_range("type outside the oracle pool");
  return get(i, j);
}

bool SubtypeOracle::set(int i, int j) {
  std::uint64_t bit = std::uint64_t{1} << (j % 64);
  std::uint64_t &w = rel_[i][j / 64];
  if (w & bit) return false;
  w |= bit;
  return true;
}

bool SubtypeOracle::close_transitively() {
  const int n = static_cast<int>(pool_.size());
  const std::size_t words = rel_.empty() ? 0 : rel_[0].size();
  bool changed = false;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k || !get(i, k)) continue;
      auto &ri = rel_[i];
      const auto &rk = rel_[k];
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t merged = ri[w] | rk[w];
        if (merged != ri[w]) {
          ri[w] = merged;
          changed = true;
        }
      }
    }
  }
  return changed;
}

void SubtypeOracle::saturate() {
  const int n = static_cast<int>(pool_.size());
  rel_.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  auto find = [this](TermKind k, int l, int r) -> int {
    if (l < 0 || r < 0) return -1;
    Term lt = pool_[l];
    Term rt = pool_[r];
    Term t = k == TermKind::kProd    ? mk_arrow({}, lt, rt)
             : k == TermKind::kInter ? mk_inter({}, lt, rt)
                                     : mk_union({}, lt, rt);
    return index_of(t);
  };

  // Axioms.
  for (int i = 0; i < n; ++i) {
    set(i, i);
    const Node &x = nodes_[i];
    if (x.kind == TermKind::kInter) {
      set(i, x.left);
      set(i, x.right);
      const Node &l = nodes_[x.left];
      const Node &r = nodes_[x.right];
      if (l.kind == TermKind::kProd && r.kind == TermKind::kProd) {
        if (l.left == r.left) {
          int target = find(TermKind::kProd, l.left,
                            find(TermKind::kInter, l.right, r.right));
          if (target >= 0) set(i, target);
        }
        if (l.right == r.right) {
          int target = find(TermKind::kProd,
                            find(TermKind::kUnion, l.left, r.left), l.right);
          if (target >= 0) set(i, target);
        }
      }
      if (r.kind == TermKind::kUnion) {
        int target = find(TermKind::kUnion, find(TermKind::kInter, x.left, r.left),
                          find(TermKind::kInter, x.left, r.right));
        if (target >= 0) set(i, target);
      }
    }
    if (x.kind == TermKind::kUnion) {
      set(x.left, i);
      set(x.right, i);
    }
  }

  bool changed = true;
  while (changed) {
    ++rounds_;
    changed = close_transitively();
    for (int i = 0; i < n; ++i) {
      const Node &x = nodes_[i];
      for (int r = 0; r < n; ++r) {
        if (x.kind == TermKind::kInter && !get(r, i) && get(r, x.left) &&
            get(r, x.right)) {
          changed |= set(r, i);
        }
        if (x.kind == TermKind::kUnion && !get(i, r) && get(x.left, r) &&
            get(x.right, r)) {
          changed |= set(i, r);
        }
        const Node &y = nodes_[r];
        if (x.kind == TermKind::kProd && y.kind == TermKind::kProd &&
            !get(i, r) && get(y.left, x.left) && get(x.right, y.right)) {
          changed |= set(i, r);
        }
      }
    }
  }
}

}  // namespace bull::testing
