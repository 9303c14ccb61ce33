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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <fmt/core.h>

#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bull/errors.h"
#include "bull/eval.h"
#include "bull/parser.h"
#include "bull/refine.h"
#include "bull/repl.h"
#include "bull/subtype.h"
#include "bull/unify.h"
#include "files.h"
#include "generators.h"
#include "subtype_oracle.h"

namespace bull {
namespace {

using Clock = std::chrono::steady_clock;
using testing::read_file;
using testing::Rng;

// Pinned budgets.
constexpr double kCorpusSeconds = 5.0;
constexpr double kOracleSeconds = 60.0;
constexpr int kOraclePoolLeaves = 4;
constexpr int kOracleQueryLeaves = 3;
constexpr int kUnifyProblems = 1000;
constexpr int kRandomTerms = 1000;

const char *const kCorpus[] = {"lambda_bddl.bull", "pierce.bull",
                               "hereditary_harrop.bull", "normal_forms.bull",
                               "lf_shallow.bull"};

// Thrown by the checks below to fail a criterion with a reason.
struct Failed {
  std::string why;
};

void require(bool ok, const std::string &why) {
  if (!ok) throw Failed{why};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Term parsed(const char *s, const std::vector<std::string> &scope = {}) {
  return fix_index(parse_term(s), scope);
}

std::string golden(const char *name) {
  return read_file(std::string(BULL_GOLDEN_DIR) + "/" + name);
}

std::string corpus(const char *name) {
  return std::string(BULL_CORPUS_DIR) + "/" + name;
}

GlobalEnv signature(const char *script) {
  std::ostringstream out;
  std::ostringstream err;
  Session s(out, err, {.quiet = true});
  require(s.run_string(script) == Session::Status::kOk, err.str());
  return s.sigma();
}

std::string check_corpus() {
  auto start = Clock::now();
  int entries = 0;
  for (const char *name : kCorpus) {
    std::ostringstream out;
    std::ostringstream err;
    Session s(out, err);
    require(s.load_file(corpus(name)) == Session::Status::kOk,
            fmt::format("{}: {}", name, err.str()));
    require(err.str().empty(), fmt::format("{} wrote to stderr", name));
    entries += static_cast<int>(s.sigma().size());
  }
  double t = seconds_since(start);
  require(t < kCorpusSeconds, fmt::format("took {:.2f}s", t));
  return fmt::format("5 files, {} entries, {:.3f}s", entries, t);
}

std::string check_hole_goldens() {
  GlobalEnv nat = signature(
      "Axiom (nat : Type) (0 : nat) (eq : nat -> nat -> Type)"
      " (eq_refl : forall x : nat, eq x x).");
  Elaborated e = elaborate(nat, parsed("eq_refl _"), parsed("eq _ 0"));
  std::string got = print_term(e.term) + " : " + print_term(e.type) + "\n";
  require(got == golden("eq_refl.txt"), "eq_refl: " + got);

  GlobalEnv st = signature("Axiom (s t : Type).");
  Elaborated p = elaborate(st, parsed("<fun x : s => x, fun x : t => _>"),
                           parsed("(s -> s) & (t -> t)"));
  got = print_term(p.term) + " : " + print_term(p.type) + "\n";
  require(got == golden("strong_pair.txt"), "strong pair: " + got);
  return "eq_refl and strong pair";
}

std::string check_error_localization() {
  GlobalEnv sigma = signature(
      "Axiom (bool nat : Type) (f : (bool -> nat -> bool) -> bool).");
  try {
    elaborate(sigma, fix_index(parse_term("f (fun x y => y)")));
  } catch (const TypeError &e) {
    std::string got = testing::trim_lines(format_error(e));
    require(got == testing::trim_lines(golden("error_localization.txt")), got);
    return "caret and message match";
  }
  throw Failed{"no type error"};
}

std::string check_subtyping_oracle() {
  auto start = Clock::now();
  testing::SubtypeOracle oracle(
      testing::enumerate_types({"a", "b"}, kOraclePoolLeaves));
  GlobalEnv sigma = signature("Axiom (a b : Type).");
  std::vector<Term> queries =
      testing::enumerate_types({"a", "b"}, kOracleQueryLeaves);
  long pairs = 0;
  long related = 0;
  for (const Term &x : queries) {
    for (const Term &y : queries) {
      bool alg = is_subtype(sigma, {}, x, y);
      require(alg == oracle.derivable(x, y),
              fmt::format("{} <= {}: algorithm says {}", print_term(x),
                          print_term(y), alg));
      ++pairs;
      if (alg) ++related;
    }
  }
  double t = seconds_since(start);
  require(t < kOracleSeconds, fmt::format("took {:.2f}s", t));
  return fmt::format("{} pairs agree ({} related), pool {}, {:.2f}s", pairs,
                     related, oracle.size(), t);
}

GlobalEnv unify_sigma() {
  GlobalEnv sigma;
  for (const char *a : {"C", "s1", "s2", "s3", "T", "o"}) {
    sigma.add_axiom({}, a, mk_type(), mk_type());
  }
  sigma.add_axiom({}, "c", parsed("C"), parsed("C"));
  return sigma;
}

bool agree(const MetaEnv &phi, const GlobalEnv &sigma, const LocalEnv &gamma,
           const Term &a, const Term &b) {
  Term na = normalize_with_metas(phi, false, sigma, gamma, instantiate_metas(phi, a));
  Term nb = normalize_with_metas(phi, false, sigma, gamma, instantiate_metas(phi, b));
  return same_term(na, nb);
}

std::string check_unification() {
  GlobalEnv sigma = unify_sigma();

  // ?f y x z = x c y
  LocalEnv ctx = LocalEnv()
                     .push_decl("x", parsed("C -> s2 -> T"))
                     .push_decl("y", parsed("s2"))
                     .push_decl("z", parsed("s3"));
  std::vector<std::string> names = ctx.names();
  MetaEnv phi0;
  int f = phi0.fresh(
      TypedDecl{LocalEnv(), parsed("forall (y : s2) (x : C -> s2 -> T) (z : s3), T")});
  Term flex = mk_app({}, mk_meta({}, f, {}),
                     {parsed("y", names), parsed("x", names), parsed("z", names)});
  MetaEnv solved = unify(phi0, sigma, ctx, flex, parsed("x c y", names));
  std::string sol = print_term(solved.solution(f));
  require(sol == "fun y : s2 => fun x : C -> s2 -> T => fun z : s3 => x c y",
          "worked example: " + sol);

  LocalEnv gamma = LocalEnv().push_decl("p", parsed("o")).push_decl("q", parsed("o"));
  const std::vector<std::string> consts = {"c", "s1", "s2"};
  Rng rng(17);
  int successes = 0;
  for (int i = 0; i < kUnifyProblems; ++i) {
    Term a = testing::random_normal_term(rng, 2, consts, 1 + i % 12);
    Term b = i % 2 == 0 ? a : testing::random_normal_term(rng, 2, consts, 1 + i % 12);
    MetaEnv phi;
    Term lhs = testing::punch_holes(rng, phi, gamma, a);
    auto out = try_unify(phi, sigma, gamma, lhs, b);
    if (i % 2 == 0) {
      require(out.has_value(), "solvable problem rejected: " +
                                   print_term(lhs, gamma.names()));
    }
    if (out) {
      ++successes;
      require(agree(*out, sigma, gamma, lhs, b),
              fmt::format("unsound: {} = {}", print_term(lhs, gamma.names()),
                          print_term(b, gamma.names())));
    }
  }
  return fmt::format("worked example exact, {} problems, {} solved soundly",
                     kUnifyProblems, successes);
}

bool normal_and_stable(const GlobalEnv &sigma, bool essence, const Term &t) {
  Term n1 = strongly_normalize(essence, sigma, {}, t);
  Term n2 = strongly_normalize(essence, sigma, {}, n1);
  return same_term(n1, n2) && testing::is_redex_free(sigma, n1);
}

std::string check_normalization() {
  int checked = 0;
  for (const char *name : kCorpus) {
    std::ostringstream out;
    std::ostringstream err;
    Session s(out, err, {.quiet = true});
    require(s.load_file(corpus(name)) == Session::Status::kOk, err.str());
    for (const GlobalEntry &e : s.sigma().entries()) {
      for (const Term &t : {e.body, e.type}) {
        if (!t) continue;
        require(normal_and_stable(s.sigma(), false, t), e.name);
        ++checked;
      }
    }
  }

  GlobalEnv sigma = signature(testing::kTypedSignature);
  Rng rng(23);
  for (int i = 0; i < kRandomTerms; ++i) {
    std::string type;
    std::string src = testing::random_typed_source(rng, 4, &type);
    Elaborated e = elaborate(sigma, fix_index(parse_term(src)),
                             fix_index(parse_term(type)));
    require(normal_and_stable(sigma, false, e.term), src);
    require(normal_and_stable(sigma, true, e.essence), "essence of " + src);
    ++checked;
  }

  std::ostringstream out;
  std::ostringstream err;
  Session s(out, err, {.quiet = true});
  s.run_string(
      "Axiom (nat : Type) (y : nat)."
      " Definition k := fun (x : nat) (y : nat) => x."
      " Definition ky := k y. Compute ky.");
  require(out.str() == "fun y0 : nat => y\n", "Compute printed " + out.str());
  return fmt::format("{} terms stable, capture-avoiding output exact", checked);
}

std::string check_essence_mismatch() {
  GlobalEnv st = signature("Axiom (s t : Type) (z : s | t).");
  auto rejects = [&](const char *term, const char *type) {
    try {
      if (type == nullptr) {
        elaborate(st, fix_index(parse_term(term)));
      } else {
        elaborate(st, fix_index(parse_term(term)), parsed(type));
      }
    } catch (const EssenceMismatch &) {
      return true;
    }
    return false;
  };
  require(rejects("<fun x : s => x, fun (x : t) (y : t) => y>",
                  "(s -> s) & (t -> t -> t)"),
          "strong pair accepted");
  require(rejects("smatch z return s -> s -> s with"
                  " x : s => fun (a b : s) => a,"
                  " x : t => fun (a b : s) => b end",
                  nullptr),
          "strong sum accepted");
  return "pair and match rejected";
}

std::string check_atomicity_and_replay() {
  std::ostringstream out;
  std::ostringstream err;
  Session s(out, err);
  s.run_string("Axiom s : Type.");
  std::string before = s.printall();
  require(s.run_string("Axiom (a : s) (b : s) (c : a).") ==
              Session::Status::kFailed,
          "ill-typed list accepted");
  require(s.printall() == before, "signature changed by a failed list");

  for (const char *name : kCorpus) {
    std::string runs[2];
    std::string sigs[2];
    for (int k = 0; k < 2; ++k) {
      std::ostringstream o;
      std::ostringstream e;
      Session r(o, e);
      r.load_file(corpus(name));
      runs[k] = o.str() + e.str();
      sigs[k] = r.printall();
    }
    require(runs[0] == runs[1] && sigs[0] == sigs[1],
            fmt::format("{} replays differently", name));
  }
  return "failed list rolled back, corpus replays identically";
}

}  // namespace
}  // namespace bull

int main() {
  struct Criterion {
    const char *name;
    std::function<std::string()> check;
  };
  const Criterion criteria[] = {
      {"corpus loads", bull::check_corpus},
      {"hole filling", bull::check_hole_goldens},
      {"error localization", bull::check_error_localization},
      {"subtyping agrees with the declarative oracle", bull::check_subtyping_oracle},
      {"unification", bull::check_unification},
      {"normalization", bull::check_normalization},
      {"essence mismatch", bull::check_essence_mismatch},
      {"atomicity and replay", bull::check_atomicity_and_replay},
  };
  int failures = 0;
  int n = 0;
  for (const Criterion &c : criteria) {
    ++n;
    std::string detail;
    bool ok = false;
    try {
      detail = c.check();
      ok = true;
    } catch (const bull::Failed &f) {
      detail = f.why;
    } catch (const std::exception &e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    fmt::print("{} {}. {}: {}\n", ok ? "PASS" : "FAIL", n, c.name, detail);
  }
  return failures == 0 ? 0 : 1;
}
