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

#include "bull/syntax.h"

#include <fmt/core.h>

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "bull/errors.h"

namespace bull {

Location Location::span(const Location &from, const Location &to) {
  Location l;
  l.source = from.source ? from.source : to.source;
  l.start = from.start;
  l.end = to.end;
  if (!from.source) l.start = to.start;
  if (!to.source) l.end = from.end;
  return l;
}

namespace {

Term make(TermKind kind, Location loc, std::vector<Term> children,
          std::string name = {}, std::string name2 = {}) {
  auto node = std::make_shared<TermNode>();
  node->kind = kind;
  node->loc = std::move(loc);
  node->children = std::move(children);
  node->name = std::move(name);
  node->name2 = std::move(name2);
  return Term(std::move(node));
}

const std::string kNoName;

}  // namespace

bool is_binder_child(TermKind k, std::size_t i) {
  switch (k) {
    case TermKind::kLet:
      return i == 2;
    case TermKind::kProd:
    case TermKind::kAbs:
      return i == 1;
    case TermKind::kSMatch:
      return i == 3 || i == 5;
    default:
      return false;
  }
}

const std::string &binder_name(const Term &t, std::size_t i) {
  if (t.is(TermKind::kSMatch) && i == 5) return t.name2();
  if (is_binder_child(t.kind(), i)) return t.name();
  return kNoName;
}

Term mk_sort(Location loc, SortKind s) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::kSort;
  node->loc = std::move(loc);
  node->sort = s;
  return Term(std::move(node));
}

Term mk_type(Location loc) { return mk_sort(std::move(loc), SortKind::kType); }

Term mk_kind(Location loc) { return mk_sort(std::move(loc), SortKind::kKind); }

Term mk_let(Location loc, std::string name, Term annot, Term bound, Term body) {
  return make(TermKind::kLet, std::move(loc),
              {std::move(annot), std::move(bound), std::move(body)},
              std::move(name));
}

Term mk_prod(Location loc, std::string name, Term domain, Term codomain) {
  return make(TermKind::kProd, std::move(loc),
              {std::move(domain), std::move(codomain)}, std::move(name));
}

Term mk_arrow(Location loc, Term domain, Term codomain) {
  return mk_prod(std::move(loc), "_", std::move(domain),
                 lift(0, 1, codomain));
}

Term mk_abs(Location loc, std::string name, Term domain, Term body) {
  return make(TermKind::kAbs, std::move(loc),
              {std::move(domain), std::move(body)}, std::move(name));
}

Term mk_app(Location loc, Term head, std::vector<Term> args) {
  if (args.empty()) return head;
  std::vector<Term> children;
  if (head.is(TermKind::kApp)) {
    children = head.children();
  } else {
    children.push_back(std::move(head));
  }
  for (auto &a : args) children.push_back(std::move(a));
  return make(TermKind::kApp, std::move(loc), std::move(children));
}

Term mk_inter(Location loc, Term left, Term right) {
  return make(TermKind::kInter, std::move(loc),
              {std::move(left), std::move(right)});
}

Term mk_union(Location loc, Term left, Term right) {
  return make(TermKind::kUnion, std::move(loc),
              {std::move(left), std::move(right)});
}

Term mk_spair(Location loc, Term left, Term right) {
  return make(TermKind::kSPair, std::move(loc),
              {std::move(left), std::move(right)});
}

Term mk_sprleft(Location loc, Term arg) {
  return make(TermKind::kSPrLeft, std::move(loc), {std::move(arg)});
}

Term mk_sprright(Location loc, Term arg) {
  return make(TermKind::kSPrRight, std::move(loc), {std::move(arg)});
}

Term mk_smatch(Location loc, Term scrutinee, Term ret, std::string name1,
               Term annot1, Term branch1, std::string name2, Term annot2,
               Term branch2) {
  return make(TermKind::kSMatch, std::move(loc),
              {std::move(scrutinee), std::move(ret), std::move(annot1),
               std::move(branch1), std::move(annot2), std::move(branch2)},
              std::move(name1), std::move(name2));
}

Term mk_sinleft(Location loc, Term other, Term payload) {
  return make(TermKind::kSInLeft, std::move(loc),
              {std::move(other), std::move(payload)});
}

Term mk_sinright(Location loc, Term other, Term payload) {
  return make(TermKind::kSInRight, std::move(loc),
              {std::move(other), std::move(payload)});
}

Term mk_coercion(Location loc, Term target, Term payload) {
  return make(TermKind::kCoercion, std::move(loc),
              {std::move(target), std::move(payload)});
}

Term mk_var(Location loc, int index) {
  assert(index >= 0);
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::kVar;
  node->loc = std::move(loc);
  node->index = index;
  return Term(std::move(node));
}

Term mk_const(Location loc, std::string name) {
  return make(TermKind::kConst, std::move(loc), {}, std::move(name));
}

Term mk_underscore(Location loc) {
  return make(TermKind::kUnderscore, std::move(loc), {});
}

Term mk_meta(Location loc, int id, std::vector<Term> suspension) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::kMeta;
  node->loc = std::move(loc);
  node->index = id;
  node->children = std::move(suspension);
  return Term(std::move(node));
}

Term with_children(const Term &t, std::vector<Term> children, std::string name,
                   std::string name2) {
  bool same = name == t.name() && name2 == t.name2();
  for (std::size_t i = 0; same && i < children.size(); ++i) {
    same = children[i].same_node(t.child(i));
  }
  if (same) return t;
  if (t.is(TermKind::kApp) && children[0].is(TermKind::kApp)) {
    Term head = children[0];
    children.erase(children.begin());
    return mk_app(t.loc(), head, std::move(children));
  }
  auto node = std::make_shared<TermNode>(*t.get());
  node->children = std::move(children);
  node->name = std::move(name);
  node->name2 = std::move(name2);
  return Term(std::move(node));
}

Term with_children(const Term &t, std::vector<Term> children) {
  return with_children(t, std::move(children), t.name(), t.name2());
}

Term visit_term(const std::function<Term(const Term &)> &f,
                const std::function<Term(const std::string &, const Term &)> &g,
                const std::function<std::string(const std::string &,
                                                const Term &)> &h,
                const Term &t) {
  if (t.arity() == 0) return t;
  std::vector<Term> children;
  children.reserve(t.arity());
  std::string name = t.name();
  std::string name2 = t.name2();
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term &c = t.child(i);
    if (is_binder_child(t.kind(), i)) {
      const std::string &s = binder_name(t, i);
      children.push_back(g(s, c));
      std::string renamed = h(s, c);
      if (t.is(TermKind::kSMatch) && i == 5) {
        name2 = std::move(renamed);
      } else {
        name = std::move(renamed);
      }
    } else {
      children.push_back(f(c));
    }
  }
  return with_children(t, std::move(children), std::move(name),
                       std::move(name2));
}

namespace {

Term map_rec(int k, const VarMapper &f, const Term &t) {
  switch (t.kind()) {
    case TermKind::kVar:
      return f(k, t.loc(), t.index());
    case TermKind::kSort:
    case TermKind::kConst:
    case TermKind::kUnderscore:
      return t;
    default:
      break;
  }
  std::vector<Term> children;
  children.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    int depth = is_binder_child(t.kind(), i) ? k + 1 : k;
    children.push_back(map_rec(depth, f, t.child(i)));
  }
  return with_children(t, std::move(children));
}

// Smallest free index that is >= k, or a large value when there is none.
bool has_free_at_least(int k, const Term &t) {
  switch (t.kind()) {
    case TermKind::kVar:
      return t.index() >= k;
    case TermKind::kSort:
    case TermKind::kConst:
    case TermKind::kUnderscore:
      return false;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    int depth = is_binder_child(t.kind(), i) ? k + 1 : k;
    if (has_free_at_least(depth, t.child(i))) return true;
  }
  return false;
}

}  // namespace

Term map_term(int k, const VarMapper &f, const Term &t) {
  return map_rec(k, f, t);
}

Term lift(int k, int n, const Term &t) {
  if (n == 0 || !has_free_at_least(k, t)) return t;
  return map_rec(k,
                 [n](int depth, const Location &l, int m) {
                   if (m < depth) return mk_var(l, m);
                   if (m + n < depth) {
                     throw InternalError(
                         fmt::format("lift underflow on index {}", m));
                   }
                   return mk_var(l, m + n);
                 },
                 t);
}

Term beta_redex(const Term &body, const Term &arg) {
  return map_rec(0,
                 [&arg](int depth, const Location &l, int m) {
                   if (m < depth) return mk_var(l, m);
                   if (m == depth) return lift(0, depth, arg);
                   return mk_var(l, m - 1);
                 },
                 body);
}

bool same_term(const Term &a, const Term &b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  switch (a.kind()) {
    case TermKind::kSort:
      return a.sort() == b.sort();
    case TermKind::kVar:
      return a.index() == b.index();
    case TermKind::kConst:
      return a.name() == b.name();
    case TermKind::kMeta:
      if (a.meta_id() != b.meta_id()) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!same_term(a.child(i), b.child(i))) return false;
  }
  return true;
}

bool free_in(int index, const Term &t) {
  switch (t.kind()) {
    case TermKind::kVar:
      return t.index() == index;
    case TermKind::kSort:
    case TermKind::kConst:
    case TermKind::kUnderscore:
      return false;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    int shifted = is_binder_child(t.kind(), i) ? index + 1 : index;
    if (free_in(shifted, t.child(i))) return true;
  }
  return false;
}

bool has_meta(const Term &t) {
  if (t.is(TermKind::kMeta)) return true;
  for (const Term &c : t.children()) {
    if (has_meta(c)) return true;
  }
  return false;
}

bool has_hole(const Term &t) {
  if (t.is(TermKind::kMeta) || t.is(TermKind::kUnderscore)) return true;
  for (const Term &c : t.children()) {
    if (has_hole(c)) return true;
  }
  return false;
}

std::size_t term_size(const Term &t) {
  std::size_t n = 1;
  for (const Term &c : t.children()) n += term_size(c);
  return n;
}

namespace {

const char *kind_name(TermKind k) {
  switch (k) {
    case TermKind::kSort: return "Sort";
    case TermKind::kLet: return "Let";
    case TermKind::kProd: return "Prod";
    case TermKind::kAbs: return "Abs";
    case TermKind::kApp: return "App";
    case TermKind::kInter: return "Inter";
    case TermKind::kUnion: return "Union";
    case TermKind::kSPair: return "SPair";
    case TermKind::kSPrLeft: return "SPrLeft";
    case TermKind::kSPrRight: return "SPrRight";
    case TermKind::kSMatch: return "SMatch";
    case TermKind::kSInLeft: return "SInLeft";
    case TermKind::kSInRight: return "SInRight";
    case TermKind::kCoercion: return "Coercion";
    case TermKind::kVar: return "Var";
    case TermKind::kConst: return "Const";
    case TermKind::kUnderscore: return "Underscore";
    case TermKind::kMeta: return "Meta";
  }
  return "?";
}

}  // namespace

std::string debug_string(const Term &t) {
  if (!t) return "<null>";
  switch (t.kind()) {
    case TermKind::kSort:
      return t.sort() == SortKind::kType ? "Type" : "Kind";
    case TermKind::kVar:
      return fmt::format("#{}", t.index());
    case TermKind::kConst:
      return t.name();
    case TermKind::kUnderscore:
      return "_";
    default:
      break;
  }
  std::string out = t.is(TermKind::kMeta)
                        ? fmt::format("?{}[", t.meta_id())
                        : fmt::format("{}(", kind_name(t.kind()));
  if (!t.name().empty() && !t.is(TermKind::kMeta)) out += t.name() + ", ";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ", ";
    out += debug_string(t.child(i));
  }
  out += t.is(TermKind::kMeta) ? "]" : ")";
  return out;
}

}  // namespace bull
