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

#include "bull/unify.h"

#include <fmt/core.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bull/errors.h"
#include "bull/eval.h"
#include "bull/parser.h"

namespace bull {

namespace {

enum class Hopu { kSolved, kNotPattern, kOccurs };

struct OccursFound {};
struct Uncovered {};

// Where a variable of the problem context lands in the solution.
struct Slot {
  bool is_arg;  // a spine argument rather than a suspension entry
  int pos;
};

// Rewrites a term over the problem context into a term over the meta's
// context followed by `lam` abstracted arguments.
class Inverter {
 public:
  Inverter(MetaEnv &work, int target, int ctx_size,
           const std::map<int, Slot> &rho, int lam)
      : work_(work), target_(target), n_(ctx_size), rho_(rho), lam_(lam) {}

  // Throws Uncovered or OccursFound.
  Term invert(const Term &t, int depth) {
    switch (t.kind()) {
      case TermKind::kVar:
        return invert_var(t, depth);
      case TermKind::kMeta:
        return invert_meta(t, depth);
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
      int d = is_binder_child(t.kind(), i) ? depth + 1 : depth;
      children.push_back(invert(t.child(i), d));
    }
    return with_children(t, std::move(children));
  }

 private:
  Term invert_var(const Term &t, int depth) const {
    int idx = t.index();
    if (idx < depth) return t;
    auto it = rho_.find(idx - depth);
    if (it == rho_.end()) throw Uncovered{};
    const Slot &s = it->second;
    if (s.is_arg) {
      if (s.pos >= lam_) throw Uncovered{};
      return mk_var(t.loc(), lam_ - 1 - s.pos + depth);
    }
    return mk_var(t.loc(), n_ - 1 - s.pos + lam_ + depth);
  }

  Term invert_meta(const Term &t, int depth) {
    int id = t.meta_id();
    if (id == target_) throw OccursFound{};
    if (work_.is_sort(id)) return t;
    std::vector<std::optional<Term>> parts;
    bool complete = true;
    for (const Term &s : t.suspension()) {
      try {
        parts.emplace_back(invert(s, depth));
      } catch (const Uncovered &) {
        parts.emplace_back();
        complete = false;
      }
    }
    if (complete) {
      std::vector<Term> susp;
      for (auto &p : parts) susp.push_back(*p);
      return with_children(t, std::move(susp));
    }
    std::vector<bool> kept;
    std::vector<Term> susp;
    for (auto &p : parts) {
      kept.push_back(p.has_value());
      if (p) susp.push_back(*p);
    }
    int restricted = prune(id, kept);
    return mk_meta(t.loc(), restricted, std::move(susp));
  }

  // Replaces meta id by a fresh one over the kept part of its context.
  int prune(int id, const std::vector<bool> &kept) {
    std::vector<LocalEntry> entries = work_.context(id).bottom_up();
    const int n = static_cast<int>(entries.size());
    std::vector<int> rank(n, -1);
    int r = 0;
    // Reindexes a term living above the first j entries.
    auto strengthen = [&](const Term &x, int j) -> Term {
      if (!x) return x;
      const int kept_before = r;
      return map_term(
          0,
          [&](int depth, const Location &l, int idx) {
            if (idx < depth) return mk_var(l, idx);
            int p = j - 1 - (idx - depth);
            if (p < 0 || rank[p] < 0) throw Uncovered{};
            return mk_var(l, kept_before - 1 - rank[p] + depth);
          },
          x);
    };
    LocalEnv ctx;
    for (int j = 0; j < n; ++j) {
      if (!kept[j]) continue;
      LocalEntry e = entries[j];
      if (e.type) e.type = strengthen(instantiate_metas(work_, e.type), j);
      if (e.body) e.body = strengthen(instantiate_metas(work_, e.body), j);
      ctx = ctx.push(std::move(e));
      rank[j] = r++;
    }
    MetaDecl decl;
    if (auto *d = std::get_if<TypedDecl>(&work_.entry(id))) {
      decl = TypedDecl{ctx, strengthen(instantiate_metas(work_, d->type), n)};
    } else {
      decl = EssDecl{ctx};
    }
    int fresh = work_.fresh(std::move(decl), work_.origin(id));
    std::vector<Term> vars;
    for (int j = 0; j < n; ++j) {
      if (kept[j]) vars.push_back(mk_var({}, n - 1 - j));
    }
    work_.instantiate(id, mk_meta({}, fresh, std::move(vars)));
    return fresh;
  }

  MetaEnv &work_;
  int target_;
  int n_;
  const std::map<int, Slot> &rho_;
  int lam_;
};

bool is_flex(const Term &t) {
  return t.is(TermKind::kMeta) ||
         (t.is(TermKind::kApp) && t.head().is(TermKind::kMeta));
}

bool flex_meta_is_essence(const MetaEnv &phi, const Term &flex) {
  const Term &m = flex.is(TermKind::kMeta) ? flex : flex.head();
  return phi.is_essence(m.meta_id());
}

class Unifier {
 public:
  Unifier(MetaEnv &phi, const GlobalEnv &sigma, bool is_essence)
      : phi_(phi), sigma_(sigma), essence_(is_essence) {}

  void unify(const LocalEnv &ctx, const Term &t1, const Term &t2) {
    Term a = instantiate_metas(phi_, t1);
    Term b = instantiate_metas(phi_, t2);
    if (same_term(a, b)) return;
    // Solutions built from the terms as written read better.
    if (is_flex(a) && hopu(ctx, a, b) == Hopu::kSolved) return;
    if (is_flex(b) && hopu(ctx, b, a) == Hopu::kSolved) return;
    step(ctx, normalize(ctx, a), normalize(ctx, b));
  }

  Hopu hopu(const LocalEnv &ctx, const Term &flex, const Term &rhs) {
    Term m = flex.is(TermKind::kMeta) ? flex : flex.head();
    int id = m.meta_id();
    if (phi_.is_sort(id) || phi_.is_instantiated(id)) return Hopu::kNotPattern;
    std::vector<Term> args;
    if (flex.is(TermKind::kApp)) args.assign(flex.args().begin(), flex.args().end());
    const auto &susp = m.suspension();
    const int n = static_cast<int>(susp.size());
    const int k = static_cast<int>(args.size());

    std::map<int, int> count;
    for (const Term &s : susp) {
      if (s.is(TermKind::kVar)) ++count[s.index()];
    }
    for (const Term &a : args) {
      if (a.is(TermKind::kVar)) ++count[a.index()];
    }
    std::map<int, Slot> rho;
    for (int j = 0; j < n; ++j) {
      if (susp[j].is(TermKind::kVar) && count[susp[j].index()] == 1) {
        rho[susp[j].index()] = Slot{false, j};
      }
    }
    for (int i = 0; i < k; ++i) {
      if (args[i].is(TermKind::kVar) && count[args[i].index()] == 1) {
        rho[args[i].index()] = Slot{true, i};
      }
    }

    MetaEnv work = phi_;
    Term body;
    try {
      Inverter inv(work, id, n, rho, k);
      body = inv.invert(rhs, 0);
    } catch (const OccursFound &) {
      return Hopu::kOccurs;
    } catch (const Uncovered &) {
      return Hopu::kNotPattern;
    }

    // Domains of the abstracted arguments.
    std::vector<Term> domains;
    std::vector<std::string> names;
    Term declared;
    LocalEnv mctx = work.context(id);
    if (auto *d = std::get_if<TypedDecl>(&work.entry(id))) declared = d->type;
    for (int i = 0; i < k; ++i) {
      std::string name = "x";
      if (args[i].is(TermKind::kVar) && args[i].index() < ctx.size()) {
        name = ctx.at(args[i].index()).name;
      }
      Term dom;
      if (essence_ || work.is_essence(id)) {
        dom = mk_underscore({});
      } else {
        if (declared) {
          Term w = whnf(&work, false, sigma_, mctx, declared);
          if (w.is(TermKind::kProd)) {
            dom = w.domain();
            declared = w.body();
          } else {
            declared = Term();
          }
        }
        if (!dom && args[i].is(TermKind::kVar)) {
          Term ty = find_var(ctx, args[i].index()).type;
          if (ty) {
            try {
              Inverter inv(work, id, n, rho, i);
              dom = inv.invert(ty, 0);
            } catch (const OccursFound &) {
              return Hopu::kOccurs;
            } catch (const Uncovered &) {
            }
          }
        }
        if (!dom) return Hopu::kNotPattern;
      }
      mctx = dom.is(TermKind::kUnderscore) ? mctx.push_bare(name)
                                           : mctx.push_decl(name, dom);
      domains.push_back(dom);
      names.push_back(name);
    }
    for (int i = k; i-- > 0;) {
      body = mk_abs(rhs.loc(), names[i], domains[i], body);
    }
    work.instantiate(id, body);
    phi_ = std::move(work);
    return Hopu::kSolved;
  }

 private:
  [[noreturn]] void fail(const LocalEnv &ctx, const Term &a, const Term &b) {
    std::vector<std::string> scope = ctx.names();
    throw UnificationFailure(
        fmt::format("cannot unify \"{}\" with \"{}\"", print_term(a, scope),
                    print_term(b, scope)),
        a.loc(), a, b);
  }

  Term normalize(const LocalEnv &ctx, const Term &t) {
    return normalize_with_metas(phi_, essence_, sigma_, ctx, t);
  }

  Term refresh(const LocalEnv &ctx, const Term &t) {
    Term z = instantiate_metas(phi_, t);
    return z.same_node(t) ? t : normalize(ctx, z);
  }

  bool is_sort_meta(const Term &t) const {
    return t.is(TermKind::kMeta) && phi_.is_sort(t.meta_id());
  }

  static bool eta_target(const Term &t) {
    switch (t.kind()) {
      case TermKind::kVar:
      case TermKind::kConst:
      case TermKind::kApp:
      case TermKind::kMeta:
      case TermKind::kSPrLeft:
      case TermKind::kSPrRight:
      case TermKind::kSMatch:
        return true;
      default:
        return false;
    }
  }

  LocalEnv extend(const LocalEnv &ctx, const Term &t, std::size_t i) const {
    const std::string &name = binder_name(t, i);
    if (t.is(TermKind::kLet)) {
      Term type = t.annot().is(TermKind::kUnderscore) || essence_ ? Term()
                                                                  : t.annot();
      return ctx.push_def(name, t.bound(), type);
    }
    const Term &dom = t.child(i - 1);
    if (essence_ || dom.is(TermKind::kUnderscore)) return ctx.push_bare(name);
    return ctx.push_decl(name, dom);
  }

  void flex_rigid(const LocalEnv &ctx, const Term &flex, const Term &rhs,
                  bool *solved) {
    Hopu h = hopu(ctx, flex, rhs);
    if (h == Hopu::kOccurs) fail(ctx, flex, rhs);
    *solved = h == Hopu::kSolved;
  }

  void sort_case(const LocalEnv &ctx, const Term &a, const Term &b) {
    if (is_sort_meta(a)) {
      if (b.is(TermKind::kSort) || is_sort_meta(b)) {
        phi_.instantiate(a.meta_id(), b);
        return;
      }
      if (is_flex(b) && hopu(ctx, b, a) == Hopu::kSolved) return;
      fail(ctx, a, b);
    }
    sort_case(ctx, b, a);
  }

  void step(const LocalEnv &ctx, const Term &a0, const Term &b0) {
    Term a = refresh(ctx, a0);
    Term b = refresh(ctx, b0);
    if (same_term(a, b)) return;
    if (is_sort_meta(a) || is_sort_meta(b)) {
      sort_case(ctx, a, b);
      return;
    }
    bool solved = false;
    if (is_flex(a)) {
      flex_rigid(ctx, a, b, &solved);
      if (solved) return;
    }
    if (is_flex(b)) {
      flex_rigid(ctx, b, a, &solved);
      if (solved) return;
    }
    if (a.is(TermKind::kAbs) && !b.is(TermKind::kAbs) && eta_target(b)) {
      step(extend(ctx, a, 1), a.body(),
           mk_app(b.loc(), lift(0, 1, b), {mk_var(b.loc(), 0)}));
      return;
    }
    if (b.is(TermKind::kAbs) && !a.is(TermKind::kAbs) && eta_target(a)) {
      step(extend(ctx, b, 1),
           mk_app(a.loc(), lift(0, 1, a), {mk_var(a.loc(), 0)}), b.body());
      return;
    }
    structural(ctx, a, b);
  }

  void structural(const LocalEnv &ctx, const Term &a, const Term &b) {
    if (a.kind() != b.kind()) fail(ctx, a, b);
    switch (a.kind()) {
      case TermKind::kSort:
        if (a.sort() != b.sort()) fail(ctx, a, b);
        return;
      case TermKind::kVar:
        if (a.index() != b.index()) fail(ctx, a, b);
        return;
      case TermKind::kConst:
        if (a.name() != b.name()) fail(ctx, a, b);
        return;
      case TermKind::kUnderscore:
        return;
      case TermKind::kMeta:
        if (a.meta_id() != b.meta_id()) fail(ctx, a, b);
        break;
      case TermKind::kApp:
        if (a.arity() != b.arity()) {
          spine_split(ctx, a, b);
          return;
        }
        break;
      default:
        break;
    }
    if (a.arity() != b.arity()) fail(ctx, a, b);
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (is_binder_child(a.kind(), i)) {
        step(extend(ctx, a, i), a.child(i), b.child(i));
      } else {
        step(ctx, a.child(i), b.child(i));
      }
    }
  }

  // Applications of different lengths with a flexible head on the shorter
  // side: the extra leading arguments go to the head.
  void spine_split(const LocalEnv &ctx, const Term &a, const Term &b) {
    const Term &s = a.arity() < b.arity() ? a : b;
    const Term &l = a.arity() < b.arity() ? b : a;
    if (!s.head().is(TermKind::kMeta)) fail(ctx, a, b);
    std::size_t extra = l.arity() - s.arity();
    auto largs = l.args();
    Term lhead = mk_app(l.loc(), l.head(),
                        std::vector<Term>(largs.begin(), largs.begin() + extra));
    auto pairs = [&](const Term &x, const Term &y) {
      if (&s == &a) {
        step(ctx, x, y);
      } else {
        step(ctx, y, x);
      }
    };
    pairs(s.head(), lhead);
    auto sargs = s.args();
    for (std::size_t i = 0; i < sargs.size(); ++i) {
      pairs(sargs[i], largs[extra + i]);
    }
  }

  MetaEnv &phi_;
  const GlobalEnv &sigma_;
  bool essence_;
};

}  // namespace

MetaEnv unify(MetaEnv phi, const GlobalEnv &sigma, const LocalEnv &gamma,
              const Term &t1, const Term &t2) {
  Unifier(phi, sigma, false).unify(gamma, t1, t2);
  return phi;
}

std::optional<MetaEnv> try_unify(const MetaEnv &phi, const GlobalEnv &sigma,
                                 const LocalEnv &gamma, const Term &t1,
                                 const Term &t2) {
  try {
    return unify(phi, sigma, gamma, t1, t2);
  } catch (const UnificationFailure &) {
    return std::nullopt;
  }
}

std::optional<MetaEnv> try_hopu(const MetaEnv &phi, const GlobalEnv &sigma,
                                const LocalEnv &gamma, const Term &flex,
                                const Term &rhs) {
  MetaEnv out = phi;
  bool essence = flex_meta_is_essence(out, flex);
  Hopu h = Unifier(out, sigma, essence).hopu(gamma, flex, rhs);
  if (h == Hopu::kOccurs) {
    throw UnificationFailure(
        fmt::format("the meta-variable occurs in \"{}\"",
                    print_term(rhs, gamma.names())),
        flex.loc(), flex, rhs);
  }
  if (h == Hopu::kNotPattern) return std::nullopt;
  return out;
}

MetaEnv unify_essence(MetaEnv phi, const GlobalEnv &sigma,
                      const EssenceEnv &psi, const Term &m1, const Term &m2) {
  Unifier(phi, sigma, true).unify(psi, m1, m2);
  return phi;
}

}  // namespace bull
