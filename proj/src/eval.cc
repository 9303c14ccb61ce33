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

#include "bull/eval.h"

#include <fmt/core.h>

#include <optional>
#include <utility>
#include <vector>

#include "bull/errors.h"

namespace bull {

void Normalizer::tick() {
  if (--fuel_ < 0) {
    throw InternalError(fmt::format(
        "normalization exceeded its budget of {} steps", opts_.fuel));
  }
}

Term Normalizer::unfold_var(const LocalEnv &ctx, const Term &t) const {
  if (t.index() >= ctx.size()) return Term();
  return find_var(ctx, t.index()).body;
}

Term Normalizer::unfold_const(const Term &t) const {
  auto info = find_const(sigma_, opts_.is_essence, t.name());
  if (!info) return Term();
  return info->body;
}

Term Normalizer::unfold_meta(const Term &t) const {
  if (opts_.phi == nullptr) {
    throw InternalError(
        fmt::format("cannot normalize the meta-variable ?{}", t.meta_id()));
  }
  auto expanded = delta_phi_expand(*opts_.phi, t);
  return expanded ? *expanded : Term();
}

Term Normalizer::normalize(const LocalEnv &ctx, const Term &t0) {
  tick();
  if (t0.is(TermKind::kUnderscore) && !opts_.is_essence) {
    throw InternalError("placeholder reached the normalizer");
  }
  // Normalize the children.
  Term t = t0;
  if (t.arity() > 0) {
    std::vector<Term> children;
    children.reserve(t.arity());
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (is_binder_child(t.kind(), i)) {
        children.push_back(normalize(ctx.push_bare(""), t.child(i)));
      } else {
        children.push_back(normalize(ctx, t.child(i)));
      }
    }
    t = with_children(t, std::move(children));
  }
  switch (t.kind()) {
    case TermKind::kApp: {
      const Term &head = t.head();
      if (head.is(TermKind::kAbs)) {
        Term reduced = normalize(ctx, beta_redex(head.body(), t.args()[0]));
        if (t.arity() == 2) return reduced;
        std::vector<Term> rest(t.args().begin() + 1, t.args().end());
        return normalize(ctx, mk_app(t.loc(), reduced, std::move(rest)));
      }
      return t;
    }
    case TermKind::kLet:
      return normalize(ctx, beta_redex(t.body(), t.bound()));
    case TermKind::kVar: {
      Term body = unfold_var(ctx, t);
      return body ? normalize(ctx, body) : t;
    }
    case TermKind::kConst: {
      Term body = unfold_const(t);
      return body ? normalize(ctx, body) : t;
    }
    case TermKind::kMeta: {
      Term body = unfold_meta(t);
      return body ? normalize(ctx, body) : t;
    }
    case TermKind::kAbs: {
      const Term &body = t.body();
      if (body.is(TermKind::kApp)) {
        auto args = body.args();
        const Term &last = args.back();
        if (last.is(TermKind::kVar) && last.index() == 0) {
          std::vector<Term> rest(args.begin(), args.end() - 1);
          Term stripped = mk_app(body.loc(), body.head(), rest);
          if (is_eta(stripped)) return lift(0, -1, stripped);
        }
      }
      return t;
    }
    case TermKind::kSPrLeft:
      return t.arg().is(TermKind::kSPair) ? t.arg().left() : t;
    case TermKind::kSPrRight:
      return t.arg().is(TermKind::kSPair) ? t.arg().right() : t;
    case TermKind::kSMatch: {
      const Term &s = t.child(0);
      if (s.is(TermKind::kSInLeft)) {
        return normalize(ctx, beta_redex(t.child(3), s.payload()));
      }
      if (s.is(TermKind::kSInRight)) {
        return normalize(ctx, beta_redex(t.child(5), s.payload()));
      }
      return t;
    }
    default:
      return t;
  }
}

Term Normalizer::whnf(const LocalEnv &ctx, const Term &t0) {
  Term t = t0;
  while (true) {
    tick();
    switch (t.kind()) {
      case TermKind::kApp: {
        Term head = whnf(ctx, t.head());
        std::vector<Term> args(t.args().begin(), t.args().end());
        if (head.is(TermKind::kAbs)) {
          Term reduced = beta_redex(head.body(), args[0]);
          args.erase(args.begin());
          t = mk_app(t.loc(), reduced, std::move(args));
          continue;
        }
        if (head.same_node(t.head())) return t;
        return mk_app(t.loc(), head, std::move(args));
      }
      case TermKind::kLet:
        t = beta_redex(t.body(), t.bound());
        continue;
      case TermKind::kVar: {
        Term body = unfold_var(ctx, t);
        if (!body) return t;
        t = body;
        continue;
      }
      case TermKind::kConst: {
        Term body = unfold_const(t);
        if (!body) return t;
        t = body;
        continue;
      }
      case TermKind::kMeta: {
        Term body = unfold_meta(t);
        if (!body) return t;
        t = body;
        continue;
      }
      case TermKind::kSPrLeft:
      case TermKind::kSPrRight: {
        Term a = whnf(ctx, t.arg());
        if (!a.is(TermKind::kSPair)) return t;
        t = t.is(TermKind::kSPrLeft) ? a.left() : a.right();
        continue;
      }
      case TermKind::kSMatch: {
        Term s = whnf(ctx, t.child(0));
        if (s.is(TermKind::kSInLeft)) {
          t = beta_redex(t.child(3), s.payload());
          continue;
        }
        if (s.is(TermKind::kSInRight)) {
          t = beta_redex(t.child(5), s.payload());
          continue;
        }
        return t;
      }
      default:
        return t;
    }
  }
}

Term strongly_normalize(bool is_essence, const GlobalEnv &sigma,
                        const LocalEnv &ctx, const Term &t, long fuel) {
  NormalizeOptions opts;
  opts.is_essence = is_essence;
  opts.fuel = fuel;
  return Normalizer(sigma, opts).normalize(ctx, t);
}

Term normalize_with_metas(const MetaEnv &phi, bool is_essence,
                          const GlobalEnv &sigma, const LocalEnv &ctx,
                          const Term &t) {
  NormalizeOptions opts;
  opts.is_essence = is_essence;
  opts.phi = &phi;
  return Normalizer(sigma, opts).normalize(ctx, t);
}

Term whnf(const MetaEnv *phi, bool is_essence, const GlobalEnv &sigma,
          const LocalEnv &ctx, const Term &t) {
  NormalizeOptions opts;
  opts.is_essence = is_essence;
  opts.phi = phi;
  return Normalizer(sigma, opts).whnf(ctx, t);
}

bool is_eta(const Term &t) { return !free_in(0, t); }

Term substitute_context(const Term &body, const std::vector<Term> &suspension) {
  const int n = static_cast<int>(suspension.size());
  return map_term(
      0,
      [&suspension, n](int depth, const Location &l, int m) {
        if (m < depth) return mk_var(l, m);
        int j = m - depth;
        if (j >= n) {
          throw InternalError(fmt::format(
              "meta solution refers to variable {} outside its context", j));
        }
        return lift(0, depth, suspension[n - 1 - j]);
      },
      body);
}

std::optional<Term> delta_phi_expand(const MetaEnv &phi, const Term &meta) {
  int id = meta.meta_id();
  Term sol = phi.solution(id);
  if (!sol) return std::nullopt;
  if (phi.is_sort(id)) return sol;
  const LocalEnv &ctx = phi.context(id);
  if (static_cast<int>(meta.suspension().size()) != ctx.size()) {
    throw InternalError(fmt::format(
        "meta-variable ?{} has a suspension of length {} for a context of {}",
        id, meta.suspension().size(), ctx.size()));
  }
  return substitute_context(sol, meta.suspension());
}

Term instantiate_metas(const MetaEnv &phi, const Term &t) {
  if (!has_meta(t)) return t;
  if (t.is(TermKind::kMeta)) {
    std::vector<Term> susp;
    susp.reserve(t.arity());
    for (const Term &s : t.suspension()) {
      susp.push_back(instantiate_metas(phi, s));
    }
    Term m = with_children(t, std::move(susp));
    auto expanded = delta_phi_expand(phi, m);
    return expanded ? instantiate_metas(phi, *expanded) : m;
  }
  std::vector<Term> children;
  children.reserve(t.arity());
  for (const Term &c : t.children()) {
    children.push_back(instantiate_metas(phi, c));
  }
  if (t.is(TermKind::kApp) && t.head().is(TermKind::kMeta) &&
      !children[0].same_node(t.head())) {
    Term head = children[0];
    std::vector<Term> args(children.begin() + 1, children.end());
    while (head.is(TermKind::kAbs) && !args.empty()) {
      head = beta_redex(head.body(), args.front());
      args.erase(args.begin());
    }
    return mk_app(t.loc(), head, std::move(args));
  }
  return with_children(t, std::move(children));
}

}  // namespace bull
