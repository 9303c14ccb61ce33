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

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bull {

/** A named piece of program text, kept alive by every location into it. */
struct Source {
  std::string name;
  std::string text;
};

struct Position {
  int line = 1;  // 1-based
  int column = 0;  // 0-based

  friend bool operator==(const Position &, const Position &) = default;
  friend auto operator<=>(const Position &, const Position &) = default;
};

struct Location {
  std::shared_ptr<const Source> source;
  Position start;
  Position end;

  /** The smallest location covering both arguments. */
  static Location span(const Location &from, const Location &to);
};

enum class SortKind { kType, kKind };

enum class TermKind {
  kSort,
  kLet,
  kProd,
  kAbs,
  kApp,
  kInter,
  kUnion,
  kSPair,
  kSPrLeft,
  kSPrRight,
  kSMatch,
  kSInLeft,
  kSInRight,
  kCoercion,
  kVar,
  kConst,
  kUnderscore,
  kMeta,
};

class Term;

struct TermNode {
  TermKind kind;
  Location loc;
  SortKind sort = SortKind::kType;
  // de Bruijn index for Var, identifier for Meta.
  int index = 0;
  // Binder name hint, constant name, or the first smatch branch name.
  std::string name;
  // Second smatch branch name.
  std::string name2;
  std::vector<Term> children;
};

/**
 * An immutable term handle.
 *
 * Terms, types, essences and type essences share this representation.
 * Children are laid out per kind:
 *
 *   Let        annot, bound, body*
 *   Prod, Abs  domain, body*
 *   App        head, arg1 ... argn          (n >= 1)
 *   Inter, Union, SPair   left, right
 *   SPrLeft, SPrRight     arg
 *   SMatch     scrutinee, return, annot1, branch1*, annot2, branch2*
 *   SInLeft, SInRight, Coercion   type, payload
 *   Meta       suspension
 *
 * Children marked with * are under one binder.
 */
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  explicit operator bool() const { return node_ != nullptr; }
  const TermNode *get() const { return node_.get(); }
  bool is(TermKind k) const { return node_->kind == k; }

  TermKind kind() const { return node_->kind; }
  const Location &loc() const { return node_->loc; }
  SortKind sort() const { return node_->sort; }
  int index() const { return node_->index; }
  int meta_id() const { return node_->index; }
  const std::string &name() const { return node_->name; }
  const std::string &name2() const { return node_->name2; }
  const std::vector<Term> &children() const { return node_->children; }
  const Term &child(std::size_t i) const { return node_->children[i]; }
  std::size_t arity() const { return node_->children.size(); }

  // Named views; valid only for the matching kinds.
  const Term &domain() const { return child(0); }
  const Term &annot() const { return child(0); }
  const Term &bound() const { return child(1); }
  const Term &body() const {
    return child(kind() == TermKind::kLet ? 2 : 1);
  }
  const Term &head() const { return child(0); }
  std::span<const Term> args() const {
    return std::span<const Term>(node_->children).subspan(1);
  }
  const Term &left() const { return child(0); }
  const Term &right() const { return child(1); }
  const Term &arg() const { return child(0); }
  const Term &type_arg() const { return child(0); }
  const Term &payload() const { return child(1); }
  const std::vector<Term> &suspension() const { return node_->children; }

  bool same_node(const Term &other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const TermNode> node_;
};

/** Whether child i of a node of kind k lives under a binder. */
bool is_binder_child(TermKind k, std::size_t i);

/** The binder name that scopes child i of t. */
const std::string &binder_name(const Term &t, std::size_t i);

// Constructors.
Term mk_sort(Location loc, SortKind s);
Term mk_type(Location loc = {});
Term mk_kind(Location loc = {});
Term mk_let(Location loc, std::string name, Term annot, Term bound, Term body);
Term mk_prod(Location loc, std::string name, Term domain, Term codomain);
Term mk_arrow(Location loc, Term domain, Term codomain);
Term mk_abs(Location loc, std::string name, Term domain, Term body);
/** Applies head to args, merging spines; returns head when args is empty. */
Term mk_app(Location loc, Term head, std::vector<Term> args);
Term mk_inter(Location loc, Term left, Term right);
Term mk_union(Location loc, Term left, Term right);
Term mk_spair(Location loc, Term left, Term right);
Term mk_sprleft(Location loc, Term arg);
Term mk_sprright(Location loc, Term arg);
Term mk_smatch(Location loc, Term scrutinee, Term ret, std::string name1,
               Term annot1, Term branch1, std::string name2, Term annot2,
               Term branch2);
Term mk_sinleft(Location loc, Term other, Term payload);
Term mk_sinright(Location loc, Term other, Term payload);
Term mk_coercion(Location loc, Term target, Term payload);
Term mk_var(Location loc, int index);
Term mk_const(Location loc, std::string name);
Term mk_underscore(Location loc);
Term mk_meta(Location loc, int id, std::vector<Term> suspension);

/** Rebuilds t with the given children; returns t itself if nothing changed. */
Term with_children(const Term &t, std::vector<Term> children);
Term with_children(const Term &t, std::vector<Term> children, std::string name,
                   std::string name2);

/**
 * Rebuilds t applying f to children outside binders and g to children under a
 * binder; h computes the new binder name.
 */
Term visit_term(const std::function<Term(const Term &)> &f,
                const std::function<Term(const std::string &, const Term &)> &g,
                const std::function<std::string(const std::string &,
                                                const Term &)> &h,
                const Term &t);

using VarMapper = std::function<Term(int depth, const Location &, int index)>;

/** Replaces every Var(l, n) at binder offset d by f(k + d, l, n). */
Term map_term(int k, const VarMapper &f, const Term &t);

/** Shifts free indices >= k by n. */
Term lift(int k, int n, const Term &t);

/** Substitutes arg for index 0 in the body of a binder. */
Term beta_redex(const Term &body, const Term &arg);

/** De Bruijn equality ignoring locations and name hints. */
bool same_term(const Term &a, const Term &b);

/** Whether Var(index) occurs free in t. */
bool free_in(int index, const Term &t);

/** Whether any Meta node occurs in t. */
bool has_meta(const Term &t);

/** Whether any Meta or Underscore node occurs in t. */
bool has_hole(const Term &t);

/** Number of nodes, for generators and diagnostics. */
std::size_t term_size(const Term &t);

/** A raw structural dump, mainly for test failure messages. */
std::string debug_string(const Term &t);

}  // namespace bull
