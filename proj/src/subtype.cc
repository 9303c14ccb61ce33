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

#include "bull/subtype.h"

#include "bull/eval.h"

namespace bull {

namespace {

Term distr_arrow(const Term &prod, const Term &a, const Term &b) {
  if (a.is(TermKind::kUnion)) {
    return mk_inter(a.loc(), distr_arrow(prod, a.left(), b),
                    distr_arrow(prod, a.right(), b));
  }
  if (b.is(TermKind::kInter)) {
    return mk_inter(b.loc(), distr_arrow(prod, a, b.left()),
                    distr_arrow(prod, a, b.right()));
  }
  return mk_prod(prod.loc(), prod.name(), a, b);
}

Term distr_union(const Term &a, const Term &b) {
  if (a.is(TermKind::kInter)) {
    return mk_inter(a.loc(), distr_union(a.left(), b), distr_union(a.right(), b));
  }
  if (b.is(TermKind::kInter)) {
    return mk_inter(b.loc(), distr_union(a, b.left()), distr_union(a, b.right()));
  }
  return mk_union({}, a, b);
}

Term distr_inter(const Term &a, const Term &b) {
  if (a.is(TermKind::kUnion)) {
    return mk_union(a.loc(), distr_inter(a.left(), b), distr_inter(a.right(), b));
  }
  if (b.is(TermKind::kUnion)) {
    return mk_union(b.loc(), distr_inter(a, b.left()), distr_inter(a, b.right()));
  }
  return mk_inter({}, a, b);
}

}  // namespace

Term anf(const Term &t) {
  if (!t.is(TermKind::kProd)) return t;
  return distr_arrow(t, danf(t.domain()), canf(t.body()));
}

Term canf(const Term &t) {
  switch (t.kind()) {
    case TermKind::kInter:
      return mk_inter(t.loc(), canf(t.left()), canf(t.right()));
    case TermKind::kUnion:
      return distr_union(canf(t.left()), canf(t.right()));
    default:
      return anf(t);
  }
}

Term danf(const Term &t) {
  switch (t.kind()) {
    case TermKind::kInter:
      return distr_inter(danf(t.left()), danf(t.right()));
    case TermKind::kUnion:
      return mk_union(t.loc(), danf(t.left()), danf(t.right()));
    default:
      return anf(t);
  }
}

bool is_subtype_nf(const Term &a, const Term &b) {
  if (a.is(TermKind::kUnion)) {
    return is_subtype_nf(a.left(), b) && is_subtype_nf(a.right(), b);
  }
  if (b.is(TermKind::kInter)) {
    return is_subtype_nf(a, b.left()) && is_subtype_nf(a, b.right());
  }
  if (a.is(TermKind::kInter)) {
    return is_subtype_nf(a.left(), b) || is_subtype_nf(a.right(), b);
  }
  if (b.is(TermKind::kUnion)) {
    return is_subtype_nf(a, b.left()) || is_subtype_nf(a, b.right());
  }
  if (a.is(TermKind::kProd) && b.is(TermKind::kProd)) {
    return is_subtype_nf(b.domain(), a.domain()) &&
           is_subtype_nf(a.body(), b.body());
  }
  return same_term(a, b);
}

bool is_subtype(const GlobalEnv &sigma, const LocalEnv &gamma, const Term &a,
                const Term &b, const MetaEnv *phi) {
  auto norm = [&](const Term &t) {
    return phi ? normalize_with_metas(*phi, false, sigma, gamma, t)
               : strongly_normalize(false, sigma, gamma, t);
  };
  return is_subtype_nf(danf(norm(a)), canf(norm(b)));
}

}  // namespace bull
