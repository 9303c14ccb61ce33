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

#include "bull/refine.h"

#include <fmt/core.h>

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bull/errors.h"
#include "bull/eval.h"
#include "bull/parser.h"
#include "bull/subtype.h"
#include "bull/unify.h"

namespace bull {

namespace {

bool is_sort(const Term &t, SortKind s) {
  return t.is(TermKind::kSort) && t.sort() == s;
}

}  // namespace

// Helpers.

Term Refiner::fresh_sort(const Location &loc) {
  return mk_meta(loc, phi_.fresh(SortDecl{}, loc), {});
}

Term Refiner::fresh_typed(const LocalEnv &gamma, const Term &type,
                          const Location &loc) {
  int id = phi_.fresh(TypedDecl{gamma, type}, loc);
  return mk_meta(loc, id, erase_context(gamma));
}

Term Refiner::zonk(const Term &t) const { return instantiate_metas(phi_, t); }

Term Refiner::view(const LocalEnv &gamma, const Term &t,
                   bool is_essence) const {
  return whnf(&phi_, is_essence, sigma_, gamma, t);
}

namespace {

std::string show(const MetaEnv &phi, const LocalEnv &gamma, const Term &t) {
  return print_term(instantiate_metas(phi, t), gamma.names());
}

}  // namespace

Term Refiner::pts(const Location &loc, const Term &s1_in, const Term &s2_in) {
  Term s1 = zonk(s1_in);
  if (s1.is(TermKind::kMeta)) {
    phi_.instantiate(s1.meta_id(), mk_type());
    s1 = mk_type();
  }
  if (!is_sort(s1, SortKind::kType)) {
    throw TypeError(
        "the domain of a product must be a type, but here it is a kind", loc);
  }
  Term s2 = zonk(s2_in);
  if (s2.is(TermKind::kMeta)) {
    phi_.instantiate(s2.meta_id(), mk_type());
    s2 = mk_type();
  }
  return mk_sort(loc, s2.sort());
}

Term Refiner::check_default(const LocalEnv &gamma, const Term &t,
                            const Term &expected) {
  Typed r = reconstruct(gamma, t);
  try {
    phi_ = unify(phi_, sigma_, gamma, r.type, expected);
  } catch (const UnificationFailure &) {
    throw TypeError(
        fmt::format(
            "the term \"{}\" has type \"{}\" while it is expected to have "
            "type \"{}\".",
            show(phi_, gamma, r.term), show(phi_, gamma, r.type),
            show(phi_, gamma, expected)),
        t.loc());
  }
  return r.term;
}

// Inference.

Refiner::Typed Refiner::reconstruct(const LocalEnv &gamma, const Term &t) {
  const Location &loc = t.loc();
  switch (t.kind()) {
    case TermKind::kSort:
      if (t.sort() == SortKind::kKind) {
        throw TypeError("\"Kind\" has no type", loc);
      }
      return {t, mk_kind(loc)};

    case TermKind::kLet: {
      Term annot = force_type(gamma, t.annot()).term;
      Term bound = reconstruct_with_type(gamma, t.bound(), annot);
      Typed body =
          reconstruct(gamma.push_def(t.name(), bound, annot), t.body());
      return {mk_let(loc, t.name(), annot, bound, body.term),
              beta_redex(body.type, bound)};
    }

    case TermKind::kProd: {
      Typed dom = force_type(gamma, t.domain());
      Typed cod = force_type(gamma.push_decl(t.name(), dom.term), t.body());
      Term s = pts(loc, dom.type, cod.type);
      return {mk_prod(loc, t.name(), dom.term, cod.term), s};
    }

    case TermKind::kAbs: {
      Term dom = force_type(gamma, t.domain()).term;
      Typed body = reconstruct(gamma.push_decl(t.name(), dom), t.body());
      Term prod = force_type(gamma, mk_prod(loc, t.name(), dom, body.type)).term;
      return {mk_abs(loc, t.name(), dom, body.term), prod};
    }

    case TermKind::kApp:
      return reconstruct_app(gamma, t);

    case TermKind::kInter:
    case TermKind::kUnion: {
      Term l = reconstruct_with_type(gamma, t.left(), mk_type(loc));
      Term r = reconstruct_with_type(gamma, t.right(), mk_type(loc));
      Term out = t.is(TermKind::kInter) ? mk_inter(loc, l, r) : mk_union(loc, l, r);
      return {out, mk_type(loc)};
    }

    case TermKind::kSPair: {
      Typed l = reconstruct(gamma, t.left());
      Typed r = reconstruct(gamma, t.right());
      Term type =
          reconstruct_with_type(gamma, mk_inter(loc, l.type, r.type), mk_type(loc));
      return {mk_spair(loc, l.term, r.term), type};
    }

    case TermKind::kSPrLeft:
    case TermKind::kSPrRight: {
      bool left = t.is(TermKind::kSPrLeft);
      Typed a = reconstruct(gamma, t.arg());
      Term out = left ? mk_sprleft(loc, a.term) : mk_sprright(loc, a.term);
      Term w = view(gamma, a.type, false);
      if (w.is(TermKind::kInter)) return {out, left ? w.left() : w.right()};
      Term x1 = fresh_typed(gamma, mk_type(), loc);
      Term x2 = fresh_typed(gamma, mk_type(), loc);
      try {
        phi_ = unify(phi_, sigma_, gamma, a.type, mk_inter(loc, x1, x2));
      } catch (const UnificationFailure &) {
        throw TypeError(
            fmt::format("the term \"{}\" has type \"{}\" which is not an "
                        "intersection",
                        show(phi_, gamma, a.term), show(phi_, gamma, a.type)),
            t.arg().loc());
      }
      return {out, left ? x1 : x2};
    }

    case TermKind::kSMatch:
      return reconstruct_smatch(gamma, t);

    case TermKind::kSInLeft:
    case TermKind::kSInRight: {
      Typed a = reconstruct(gamma, t.payload());
      Term other = reconstruct_with_type(gamma, t.type_arg(), mk_type(loc));
      if (t.is(TermKind::kSInLeft)) {
        return {mk_sinleft(loc, other, a.term), mk_union(loc, a.type, other)};
      }
      return {mk_sinright(loc, other, a.term), mk_union(loc, other, a.type)};
    }

    case TermKind::kCoercion: {
      Term target = force_type(gamma, t.type_arg()).term;
      Typed a = reconstruct(gamma, t.payload());
      Term from = zonk(a.type);
      Term to = zonk(target);
      if (!is_subtype(sigma_, gamma, from, to, &phi_)) {
        throw TypeError(
            fmt::format("the term \"{}\" has type \"{}\" which is not a "
                        "subtype of \"{}\"",
                        show(phi_, gamma, a.term), show(phi_, gamma, from),
                        show(phi_, gamma, to)),
            t.payload().loc());
      }
      return {mk_coercion(loc, target, a.term), target};
    }

    case TermKind::kVar: {
      Term type = find_var(gamma, t.index()).type;
      if (!type) throw InternalError("untyped variable in a typing context");
      return {t, type};
    }

    case TermKind::kConst: {
      auto info = find_const(sigma_, false, t.name());
      if (!info) {
        throw TypeError(fmt::format("unknown identifier \"{}\"", t.name()), loc);
      }
      return {t, info->type};
    }

    case TermKind::kUnderscore: {
      Term z = fresh_sort(loc);
      Term y = fresh_typed(gamma, z, loc);
      Term x = fresh_typed(gamma, y, loc);
      return {x, y};
    }

    case TermKind::kMeta:
      return reconstruct_meta(gamma, t);
  }
  throw InternalError("unknown term kind");
}

Refiner::Typed Refiner::reconstruct_app(const LocalEnv &gamma, const Term &t) {
  Typed acc = reconstruct(gamma, t.head());
  for (const Term &arg : t.args()) {
    Term w = view(gamma, acc.type, false);
    Term arg2;
    Term type;
    if (w.is(TermKind::kProd)) {
      arg2 = reconstruct_with_type(gamma, arg, w.domain());
      type = beta_redex(w.body(), arg2);
    } else {
      Typed a = reconstruct(gamma, arg);
      arg2 = a.term;
      LocalEnv ext = gamma.push_decl("x", a.type);
      Term y = fresh_sort(arg.loc());
      Term x = fresh_typed(ext, y, arg.loc());
      try {
        phi_ = unify(phi_, sigma_, gamma, acc.type,
                     mk_prod(t.loc(), "x", a.type, x));
      } catch (const UnificationFailure &) {
        throw TypeError(
            fmt::format("the term \"{}\" has type \"{}\" which is not a "
                        "function type",
                        show(phi_, gamma, acc.term), show(phi_, gamma, acc.type)),
            acc.term.loc());
      }
      type = beta_redex(x, arg2);
    }
    acc = {mk_app(Location::span(t.loc(), arg.loc()), acc.term, {arg2}), type};
  }
  return acc;
}

Refiner::Typed Refiner::reconstruct_smatch(const LocalEnv &gamma,
                                           const Term &t) {
  const Location &loc = t.loc();
  Typed scrut = reconstruct(gamma, t.child(0));
  Term s1 = reconstruct_with_type(gamma, t.child(2), mk_type(loc));
  Term s2 = reconstruct_with_type(gamma, t.child(4), mk_type(loc));
  Term sum = mk_union(loc, s1, s2);
  try {
    phi_ = unify(phi_, sigma_, gamma, scrut.type, sum);
  } catch (const UnificationFailure &) {
    throw TypeError(
        fmt::format(
            "the term \"{}\" has type \"{}\" while it is expected to have "
            "type \"{}\".",
            show(phi_, gamma, scrut.term), show(phi_, gamma, scrut.type),
            show(phi_, gamma, sum)),
        t.child(0).loc());
  }
  Term ret = reconstruct_with_type(
      gamma, t.child(1), mk_prod(loc, t.child(1).name(), sum, mk_type(loc)));
  if (!ret.is(TermKind::kAbs)) {
    throw InternalError("the return clause of a match is not an abstraction");
  }
  const Term &motive = ret.body();
  Term b1_type = beta_redex(lift(1, 1, motive),
                            mk_sinleft(loc, lift(0, 1, s2), mk_var(loc, 0)));
  Term b1 = reconstruct_with_type(gamma.push_decl(t.name(), s1), t.child(3),
                                  b1_type);
  Term b2_type = beta_redex(lift(1, 1, motive),
                            mk_sinright(loc, lift(0, 1, s1), mk_var(loc, 0)));
  Term b2 = reconstruct_with_type(gamma.push_decl(t.name2(), s2), t.child(5),
                                  b2_type);
  return {mk_smatch(loc, scrut.term, ret, t.name(), s1, b1, t.name2(), s2, b2),
          beta_redex(motive, scrut.term)};
}

Refiner::Typed Refiner::reconstruct_meta(const LocalEnv &gamma,
                                         const Term &t) {
  int id = t.meta_id();
  if (phi_.is_sort(id)) {
    Term z = zonk(t);
    if (z.is(TermKind::kMeta)) {
      phi_.instantiate(z.meta_id(), mk_type());
      z = mk_type();
    }
    return reconstruct(gamma, z);
  }
  const MetaEntry &e = phi_.entry(id);
  Term declared;
  if (auto *d = std::get_if<TypedDecl>(&e)) declared = d->type;
  if (auto *d = std::get_if<TypedDef>(&e)) declared = d->type;
  if (!declared) throw InternalError("essence meta in a typed term");
  std::vector<LocalEntry> entries = phi_.context(id).bottom_up();
  const auto &susp = t.suspension();
  if (susp.size() != entries.size()) {
    throw InternalError("suspension does not match the meta's context");
  }
  std::vector<Term> checked;
  for (std::size_t i = 0; i < susp.size(); ++i) {
    Term expected = entries[i].type
                        ? substitute_context(entries[i].type, checked)
                        : Term();
    if (expected) {
      checked.push_back(reconstruct_with_type(gamma, susp[i], expected));
    } else {
      checked.push_back(susp[i]);
    }
  }
  return {mk_meta(t.loc(), id, checked), substitute_context(declared, checked)};
}

Refiner::Typed Refiner::force_type(const LocalEnv &gamma, const Term &t) {
  Typed r = reconstruct(gamma, t);
  Term w = zonk(view(gamma, r.type, false));
  if (w.is(TermKind::kSort)) return {r.term, w};
  if (w.is(TermKind::kMeta) && phi_.is_sort(w.meta_id())) return {r.term, w};
  auto as_type = try_unify(phi_, sigma_, gamma, r.type, mk_type());
  auto as_kind = try_unify(phi_, sigma_, gamma, r.type, mk_kind());
  if (as_type && as_kind) {
    Term s = fresh_sort(t.loc());
    if (auto linked = try_unify(phi_, sigma_, gamma, r.type, s)) {
      phi_ = std::move(*linked);
      return {r.term, s};
    }
    phi_ = std::move(*as_type);
    return {r.term, mk_type()};
  }
  if (as_type) {
    phi_ = std::move(*as_type);
    return {r.term, mk_type()};
  }
  if (as_kind) {
    phi_ = std::move(*as_kind);
    return {r.term, mk_kind()};
  }
  throw NotAType(fmt::format("the term \"{}\" has type \"{}\" which is not a sort",
                             show(phi_, gamma, r.term), show(phi_, gamma, r.type)),
                 t.loc());
}

// Checking.

Term Refiner::reconstruct_with_type(const LocalEnv &gamma, const Term &t,
                                    const Term &expected) {
  const Location &loc = t.loc();
  switch (t.kind()) {
    case TermKind::kLet: {
      Term annot = force_type(gamma, t.annot()).term;
      Term bound = reconstruct_with_type(gamma, t.bound(), annot);
      Term body = reconstruct_with_type(gamma.push_def(t.name(), bound, annot),
                                        t.body(), lift(0, 1, expected));
      return mk_let(loc, t.name(), annot, bound, body);
    }

    case TermKind::kAbs: {
      Term w = view(gamma, expected, false);
      if (!w.is(TermKind::kProd)) break;
      Term dom;
      if (t.domain().is(TermKind::kUnderscore)) {
        dom = w.domain();
      } else {
        dom = force_type(gamma, t.domain()).term;
        try {
          phi_ = unify(phi_, sigma_, gamma, dom, w.domain());
        } catch (const UnificationFailure &) {
          throw TypeError(
              fmt::format("the domain \"{}\" does not match the expected "
                          "type \"{}\".",
                          show(phi_, gamma, dom), show(phi_, gamma, w.domain())),
              t.domain().loc());
        }
      }
      Term body = reconstruct_with_type(gamma.push_decl(t.name(), dom),
                                        t.body(), w.body());
      return mk_abs(loc, t.name(), dom, body);
    }

    case TermKind::kSPair: {
      Term w = view(gamma, expected, false);
      if (!w.is(TermKind::kInter)) break;
      Term l = reconstruct_with_type(gamma, t.left(), w.left());
      Term r = reconstruct_with_type(gamma, t.right(), w.right());
      return mk_spair(loc, l, r);
    }

    case TermKind::kSPrLeft:
    case TermKind::kSPrRight: {
      bool left = t.is(TermKind::kSPrLeft);
      Term x = fresh_typed(gamma, mk_type(), loc);
      Term both = left ? mk_inter(loc, expected, x) : mk_inter(loc, x, expected);
      both = reconstruct_with_type(gamma, both, mk_type(loc));
      Term a = reconstruct_with_type(gamma, t.arg(), both);
      return left ? mk_sprleft(loc, a) : mk_sprright(loc, a);
    }

    case TermKind::kSInLeft:
    case TermKind::kSInRight: {
      Term w = view(gamma, expected, false);
      if (!w.is(TermKind::kUnion)) break;
      bool left = t.is(TermKind::kSInLeft);
      const Term &mine = left ? w.left() : w.right();
      const Term &theirs = left ? w.right() : w.left();
      Term other = reconstruct_with_type(gamma, t.type_arg(), mk_type(loc));
      try {
        phi_ = unify(phi_, sigma_, gamma, other, theirs);
      } catch (const UnificationFailure &) {
        throw TypeError(
            fmt::format("the type \"{}\" does not match the expected "
                        "type \"{}\".",
                        show(phi_, gamma, other), show(phi_, gamma, theirs)),
            t.type_arg().loc());
      }
      Term a = reconstruct_with_type(gamma, t.payload(), mine);
      return left ? mk_sinleft(loc, other, a) : mk_sinright(loc, other, a);
    }

    case TermKind::kUnderscore:
      return fresh_typed(gamma, expected, loc);

    default:
      break;
  }
  return check_default(gamma, t, expected);
}

// Essences.

Term Refiner::essence_meta(const EssenceEnv &psi, const Term &t) {
  int id = t.meta_id();
  if (phi_.is_instantiated(id)) return essence(psi, zonk(t));
  if (phi_.is_sort(id)) return t;
  int eid;
  if (auto known = phi_.essence_meta_of(id)) {
    eid = *known;
  } else {
    eid = phi_.fresh(EssDecl{bare_context(phi_.context(id))}, phi_.origin(id));
    phi_.set_essence_meta(id, eid);
  }
  std::vector<Term> susp;
  for (const Term &s : t.suspension()) susp.push_back(essence(psi, s));
  return mk_meta(t.loc(), eid, std::move(susp));
}

Term Refiner::essence(const EssenceEnv &psi, const Term &t) {
  const Location &loc = t.loc();
  switch (t.kind()) {
    case TermKind::kSort:
    case TermKind::kVar:
    case TermKind::kConst:
      return t;
    case TermKind::kLet: {
      Term bound = essence(psi, t.bound());
      Term body = essence(psi.push_def(t.name(), bound, Term()), t.body());
      return mk_let(loc, t.name(), mk_underscore(loc), bound, body);
    }
    case TermKind::kProd: {
      Term dom = essence(psi, t.domain());
      Term cod = essence(psi.push_bare(t.name()), t.body());
      return mk_prod(loc, t.name(), dom, cod);
    }
    case TermKind::kAbs: {
      essence(psi, t.domain());
      Term body = essence(psi.push_bare(t.name()), t.body());
      return mk_abs(loc, t.name(), mk_underscore(loc), body);
    }
    case TermKind::kApp: {
      Term head = essence(psi, t.head());
      std::vector<Term> args;
      for (const Term &a : t.args()) args.push_back(essence(psi, a));
      return mk_app(loc, head, std::move(args));
    }
    case TermKind::kInter:
    case TermKind::kUnion: {
      Term l = essence(psi, t.left());
      Term r = essence(psi, t.right());
      return t.is(TermKind::kInter) ? mk_inter(loc, l, r) : mk_union(loc, l, r);
    }
    case TermKind::kSPair: {
      Term m = essence(psi, t.left());
      essence_with_hint(psi, m, t.right());
      return m;
    }
    case TermKind::kSPrLeft:
    case TermKind::kSPrRight:
      return essence(psi, t.arg());
    case TermKind::kSInLeft:
    case TermKind::kSInRight:
    case TermKind::kCoercion:
      return essence(psi, t.payload());
    case TermKind::kSMatch: {
      Term n = essence(psi, t.child(0));
      essence(psi, t.child(1));
      essence(psi, t.child(2));
      Term m = essence(psi.push_bare(t.name()), t.child(3));
      essence(psi, t.child(4));
      essence_with_hint(psi.push_bare(t.name2()), m, t.child(5));
      return mk_app(loc, mk_abs(loc, t.name(), mk_underscore(loc), m), {n});
    }
    case TermKind::kMeta:
      return essence_meta(psi, t);
    case TermKind::kUnderscore:
      throw InternalError("placeholder left in a refined term");
  }
  throw InternalError("unknown term kind");
}

void Refiner::essence_default(const EssenceEnv &psi, const Term &m,
                              const Term &t) {
  Term actual = essence(psi, t);
  try {
    phi_ = unify_essence(phi_, sigma_, psi, m, actual);
  } catch (const UnificationFailure &) {
    throw EssenceMismatch(
        fmt::format("the term \"{}\" has essence \"{}\" while it is expected "
                    "to have essence \"{}\".",
                    show(phi_, psi, t), show(phi_, psi, actual),
                    show(phi_, psi, m)),
        t.loc());
  }
}

void Refiner::essence_with_hint(const EssenceEnv &psi, const Term &m,
                                const Term &t) {
  switch (t.kind()) {
    case TermKind::kSPair:
      essence_with_hint(psi, m, t.left());
      essence_with_hint(psi, m, t.right());
      return;
    case TermKind::kSPrLeft:
    case TermKind::kSPrRight:
      essence_with_hint(psi, m, t.arg());
      return;
    case TermKind::kSInLeft:
    case TermKind::kSInRight:
      essence(psi, t.type_arg());
      essence_with_hint(psi, m, t.payload());
      return;
    case TermKind::kLet: {
      essence(psi, t.annot());
      Term bound = essence(psi, t.bound());
      essence_with_hint(psi.push_def(t.name(), bound, Term()), lift(0, 1, m),
                        t.body());
      return;
    }
    case TermKind::kProd: {
      Term w = view(psi, m, true);
      if (!w.is(TermKind::kProd)) break;
      essence_with_hint(psi, w.domain(), t.domain());
      essence_with_hint(psi.push_bare(t.name()), w.body(), t.body());
      return;
    }
    case TermKind::kAbs: {
      Term w = view(psi, m, true);
      if (!w.is(TermKind::kAbs)) break;
      essence_with_hint(psi.push_bare(t.name()), w.body(), t.body());
      return;
    }
    case TermKind::kInter:
    case TermKind::kUnion: {
      Term w = view(psi, m, true);
      if (w.kind() != t.kind()) break;
      essence_with_hint(psi, w.left(), t.left());
      essence_with_hint(psi, w.right(), t.right());
      return;
    }
    default:
      break;
  }
  essence_default(psi, m, t);
}

// Functional wrappers.

RefineResult reconstruct(MetaEnv phi, const GlobalEnv &sigma,
                         const LocalEnv &gamma, const Term &t) {
  Refiner r(sigma, phi);
  Refiner::Typed out = r.reconstruct(gamma, t);
  return {out.term, out.type, std::move(phi)};
}

RefineResult force_type(MetaEnv phi, const GlobalEnv &sigma,
                        const LocalEnv &gamma, const Term &t) {
  Refiner r(sigma, phi);
  Refiner::Typed out = r.force_type(gamma, t);
  return {out.term, out.type, std::move(phi)};
}

RefineResult reconstruct_with_type(MetaEnv phi, const GlobalEnv &sigma,
                                   const LocalEnv &gamma, const Term &t,
                                   const Term &expected) {
  Refiner r(sigma, phi);
  Term out = r.reconstruct_with_type(gamma, t, expected);
  return {out, Term(), std::move(phi)};
}

RefineResult essence(MetaEnv phi, const GlobalEnv &sigma,
                     const EssenceEnv &psi, const Term &t) {
  Refiner r(sigma, phi);
  Term out = r.essence(psi, t);
  return {out, Term(), std::move(phi)};
}

MetaEnv essence_with_hint(MetaEnv phi, const GlobalEnv &sigma,
                          const EssenceEnv &psi, const Term &m, const Term &t) {
  Refiner r(sigma, phi);
  r.essence_with_hint(psi, m, t);
  return phi;
}

// Elaboration.

namespace {

void collect_metas(const Term &t, std::set<int> &out) {
  if (t.is(TermKind::kMeta)) out.insert(t.meta_id());
  for (const Term &c : t.children()) collect_metas(c, out);
}

bool has_underscore(const Term &t) {
  if (t.is(TermKind::kUnderscore)) return true;
  for (const Term &c : t.children()) {
    if (has_underscore(c)) return true;
  }
  return false;
}

class Elaborator {
 public:
  explicit Elaborator(const GlobalEnv &sigma) : sigma_(sigma), r_(sigma, phi_) {}

  Elaborated run(const std::function<Refiner::Typed(Refiner &)> &phase1) {
    Refiner::Typed typed = phase1(r_);
    Term term = instantiate_metas(phi_, typed.term);
    Term type = instantiate_metas(phi_, typed.type);
    Term ess = r_.essence({}, term);
    Term type_ess = r_.essence({}, type);
    fill_from_essences(term, type);
    Elaborated out{instantiate_metas(phi_, term), instantiate_metas(phi_, type),
                   instantiate_metas(phi_, ess),
                   instantiate_metas(phi_, type_ess)};
    std::set<int> left;
    for (const Term *t : {&out.term, &out.type, &out.essence, &out.type_essence}) {
      collect_metas(*t, left);
    }
    if (!left.empty()) {
      int id = *left.begin();
      Location where = phi_.origin(id);
      if (!where.source) where = typed.term.loc();
      throw UnresolvedMeta("cannot infer a value for this placeholder", where,
                           id);
    }
    if (has_underscore(out.term) || has_underscore(out.type)) {
      throw InternalError("placeholder left after elaboration");
    }
    return out;
  }

 private:
  // A hole whose essence was determined by the essence phase is filled with
  // that essence, checked against the hole's type.
  void fill_from_essences(const Term &term, const Term &type) {
    bool progress = true;
    while (progress) {
      progress = false;
      std::set<int> ids;
      collect_metas(instantiate_metas(phi_, term), ids);
      collect_metas(instantiate_metas(phi_, type), ids);
      for (int id : ids) {
        if (phi_.is_instantiated(id) || phi_.is_sort(id) || phi_.is_essence(id)) {
          continue;
        }
        auto eid = phi_.essence_meta_of(id);
        if (!eid || !phi_.is_instantiated(*eid)) continue;
        Term candidate = instantiate_metas(phi_, phi_.solution(*eid));
        if (has_meta(candidate)) continue;
        const auto &decl = std::get<TypedDecl>(phi_.entry(id));
        LocalEnv ctx = decl.ctx;
        Term expected = decl.type;
        Term filled = r_.reconstruct_with_type(ctx, candidate, expected);
        phi_ = unify(phi_, sigma_, ctx, mk_meta({}, id, erase_context(ctx)),
                     filled);
        progress = true;
      }
    }
  }

  const GlobalEnv &sigma_;
  MetaEnv phi_;
  Refiner r_;
};

}  // namespace

Elaborated elaborate(const GlobalEnv &sigma, const Term &t,
                     const std::optional<Term> &expected) {
  Elaborator e(sigma);
  return e.run([&](Refiner &r) -> Refiner::Typed {
    if (!expected) return r.reconstruct({}, t);
    Term type = r.force_type({}, *expected).term;
    return {r.reconstruct_with_type({}, t, type), type};
  });
}

Elaborated elaborate_type(const GlobalEnv &sigma, const Term &t) {
  Elaborator e(sigma);
  return e.run([&](Refiner &r) { return r.force_type({}, t); });
}

}  // namespace bull
