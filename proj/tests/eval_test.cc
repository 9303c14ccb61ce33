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


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "bull/errors.h"
#include "bull/eval.h"
#include "bull/parser.h"
#include "bull/refine.h"
#include "bull/repl.h"
#include "generators.h"

namespace bull {
namespace {

using testing::is_redex_free;
using testing::Rng;

// Placeholders left by the parser become the constant T.
Term fill(const Term &t) {
  if (t.is(TermKind::kUnderscore)) return mk_const({}, "T");
  std::vector<Term> children;
  for (const Term &c : t.children()) children.push_back(fill(c));
  return with_children(t, std::move(children));
}

Term parsed(const char *s) { return fill(fix_index(parse_term(s))); }

Term nf(const GlobalEnv &sigma, const char *s) {
  return strongly_normalize(false, sigma, {}, parsed(s));
}

bool nf_is(const GlobalEnv &sigma, const char *s, const char *expected) {
  return same_term(nf(sigma, s), parsed(expected));
}

TEST(Normalize, Beta) {
  GlobalEnv sigma;
  EXPECT_TRUE(nf_is(sigma, "(fun x : A => f x x) c", "f c c"));
  EXPECT_TRUE(nf_is(sigma, "(fun (x y : A) => g y x) c d", "g d c"));
}

TEST(Normalize, Zeta) {
  GlobalEnv sigma;
  EXPECT_TRUE(nf_is(sigma, "let x : A := c in f x", "f c"));
}

TEST(Normalize, ProjectionsAndMatches) {
  GlobalEnv sigma;
  EXPECT_TRUE(nf_is(sigma, "proj_l <a, b>", "a"));
  EXPECT_TRUE(nf_is(sigma, "proj_r <a, b>", "b"));
  EXPECT_TRUE(nf_is(sigma, "smatch inj_l B c with x => f x, y => g y end", "f c"));
  EXPECT_TRUE(nf_is(sigma, "smatch inj_r A c with x => f x, y => g y end", "g c"));
  // A stuck match is kept.
  EXPECT_TRUE(nf_is(sigma, "smatch z with x => f x, y => g y end",
                    "smatch z with x => f x, y => g y end"));
}

TEST(Normalize, Eta) {
  GlobalEnv sigma;
  EXPECT_TRUE(nf_is(sigma, "fun x : A => f c x", "f c"));
  EXPECT_TRUE(nf_is(sigma, "fun x : A => f x x", "fun x : A => f x x"));
  EXPECT_TRUE(nf_is(sigma, "fun (x : A) (y : B) => f x y", "f"));
}

TEST(Normalize, Delta) {
  GlobalEnv sigma;
  sigma.add_axiom({}, "c", mk_type(), mk_type());
  sigma.add_definition({}, "d", parsed("f c"), mk_type(), parsed("g c"), mk_type());
  EXPECT_TRUE(nf_is(sigma, "d", "f c"));
  EXPECT_TRUE(same_term(strongly_normalize(true, sigma, {}, parsed("d")), parsed("g c")));
  LocalEnv gamma = LocalEnv().push_def("x", parsed("h c"), mk_type());
  EXPECT_TRUE(same_term(strongly_normalize(false, sigma, gamma, mk_var({}, 0)),
                        parsed("h c")));
}

TEST(Normalize, FuelBoundsDivergence) {
  GlobalEnv sigma;
  Term omega = parsed("(fun x : A => x x) (fun x : A => x x)");
  EXPECT_THROW(strongly_normalize(false, sigma, {}, omega, 10000), InternalError);
}

TEST(Normalize, MetasNeedAnEnvironment) {
  GlobalEnv sigma;
  MetaEnv phi;
  int id = phi.fresh(TypedDecl{LocalEnv().push_decl("x", mk_type()), mk_type()});
  Term m = mk_app({}, mk_const({}, "f"), {mk_meta({}, id, {mk_const({}, "c")})});
  EXPECT_THROW(strongly_normalize(false, sigma, {}, m), InternalError);
  EXPECT_TRUE(same_term(normalize_with_metas(phi, false, sigma, {}, m), m));
  phi.instantiate(id, parsed("fun y : A => y"));
  Term expanded = normalize_with_metas(phi, false, sigma, {}, mk_app({}, m, {}));
  EXPECT_TRUE(same_term(expanded, parsed("f (fun y : A => y)")));
}

TEST(Normalize, SuspensionsSubstituteTheContext) {
  MetaEnv phi;
  LocalEnv ctx = LocalEnv().push_decl("x", mk_type()).push_decl("y", mk_type());
  int id = phi.fresh(TypedDecl{ctx, mk_type()});
  // Solution over (x, y): f x y, i.e. f Var1 Var0.
  phi.instantiate(id, mk_app({}, mk_const({}, "f"), {mk_var({}, 1), mk_var({}, 0)}));
  Term m = mk_meta({}, id, {mk_const({}, "a"), mk_const({}, "b")});
  auto out = delta_phi_expand(phi, m);
  ASSERT_TRUE(out.has_value());
  EXPECT_TRUE(same_term(*out, parsed("f a b")));
}

TEST(Normalize, InstantiateMetasContractsHeads) {
  MetaEnv phi;
  int id = phi.fresh(TypedDecl{LocalEnv(), mk_type()});
  phi.instantiate(id, parsed("fun z : A => g z"));
  Term t = mk_app({}, mk_meta({}, id, {}), {mk_const({}, "c")});
  EXPECT_TRUE(same_term(instantiate_metas(phi, t), parsed("g c")));
  Term plain = parsed("f c");
  EXPECT_TRUE(instantiate_metas(phi, plain).same_node(plain));
}

TEST(Whnf, StopsAtTheHead) {
  GlobalEnv sigma;
  Term t = parsed("(fun x : A => f ((fun y : A => y) x)) c");
  Term w = whnf(nullptr, false, sigma, {}, t);
  EXPECT_TRUE(same_term(w, parsed("f ((fun y : A => y) c)")));
  EXPECT_TRUE(same_term(whnf(nullptr, false, sigma, {}, parsed("proj_r <a, b>")),
                        parsed("b")));
}

TEST(Compute, RenamesTheCapturingBinder) {
  std::ostringstream out;
  std::ostringstream err;
  Session s(out, err, {.quiet = true});
  ASSERT_EQ(s.run_string("Axiom (nat : Type) (y : nat).\n"
                         "Definition k := (fun (x y : nat) => x) y.\n"
                         "Compute k.\n"),
            Session::Status::kOk)
      << err.str();
  EXPECT_EQ(out.str(), "fun y0 : nat => y\n");
}

TEST(Properties, RandomElaboratedTermsNormalizeIdempotently) {
  std::ostringstream out;
  std::ostringstream err;
  Session s(out, err, {.quiet = true});
  ASSERT_EQ(s.run_string(testing::kTypedSignature), Session::Status::kOk);
  const GlobalEnv &sigma = s.sigma();
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::string type;
    std::string src = testing::random_typed_source(rng, 4, &type);
    Elaborated e = elaborate(sigma, fix_index(parse_term(src)),
                             fix_index(parse_term(type)));
    Term n1 = strongly_normalize(false, sigma, {}, e.term);
    Term n2 = strongly_normalize(false, sigma, {}, n1);
    EXPECT_TRUE(same_term(n1, n2)) << src;
    EXPECT_TRUE(is_redex_free(sigma, n1)) << src << "\n" << print_term(n1);
    Term m1 = strongly_normalize(true, sigma, {}, e.essence);
    EXPECT_TRUE(same_term(m1, strongly_normalize(true, sigma, {}, m1))) << src;
    EXPECT_TRUE(is_redex_free(sigma, m1)) << src;
  }
}

TEST(Properties, CorpusDefinitionsNormalizeIdempotently) {
  for (const auto &file : std::filesystem::directory_iterator(BULL_CORPUS_DIR)) {
    std::ostringstream out;
    std::ostringstream err;
    Session s(out, err, {.quiet = true});
    ASSERT_EQ(s.load_file(file.path().string()), Session::Status::kOk) << err.str();
    for (const GlobalEntry &e : s.sigma().entries()) {
      for (const Term &t : {e.body, e.type}) {
        if (!t) continue;
        Term n1 = strongly_normalize(false, s.sigma(), {}, t);
        EXPECT_TRUE(same_term(n1, strongly_normalize(false, s.sigma(), {}, n1)))
            << e.name;
        EXPECT_TRUE(is_redex_free(s.sigma(), n1)) << e.name;
      }
    }
  }
}

}  // namespace
}  // namespace bull
