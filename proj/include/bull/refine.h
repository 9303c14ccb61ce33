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

#include <optional>

#include "bull/env.h"
#include "bull/syntax.h"

namespace bull {

/**
 * The bidirectional refiner. Holds a reference to the meta environment it
 * extends; every judgment throws a located Error on failure, after which the
 * environment must be discarded.
 */
class Refiner {
 public:
  struct Typed {
    Term term;
    Term type;
  };

  Refiner(const GlobalEnv &sigma, MetaEnv &phi) : sigma_(sigma), phi_(phi) {}

  /** Infers the type of t, filling its holes. */
  Typed reconstruct(const LocalEnv &gamma, const Term &t);

  /** Refines t and makes sure it is a type; the type is a sort or sort meta. */
  Typed force_type(const LocalEnv &gamma, const Term &t);

  /** Refines t against the expected type. */
  Term reconstruct_with_type(const LocalEnv &gamma, const Term &t,
                             const Term &expected);

  /** The essence of a refined term. */
  Term essence(const EssenceEnv &psi, const Term &t);

  /** Checks that the refined term t has essence m. */
  void essence_with_hint(const EssenceEnv &psi, const Term &m, const Term &t);

 private:
  Term fresh_sort(const Location &loc);
  Term fresh_typed(const LocalEnv &gamma, const Term &type,
                   const Location &loc);
  Term zonk(const Term &t) const;
  Term view(const LocalEnv &gamma, const Term &t, bool is_essence) const;
  Term pts(const Location &loc, const Term &s1, const Term &s2);
  Typed reconstruct_app(const LocalEnv &gamma, const Term &t);
  Typed reconstruct_smatch(const LocalEnv &gamma, const Term &t);
  Typed reconstruct_meta(const LocalEnv &gamma, const Term &t);
  Term check_default(const LocalEnv &gamma, const Term &t,
                     const Term &expected);
  Term essence_meta(const EssenceEnv &psi, const Term &t);
  void essence_default(const EssenceEnv &psi, const Term &m, const Term &t);

  const GlobalEnv &sigma_;
  MetaEnv &phi_;
};

/** Result of the functional wrappers below. */
struct RefineResult {
  Term term;
  Term type;  // empty for reconstruct_with_type and essence
  MetaEnv phi;
};

RefineResult reconstruct(MetaEnv phi, const GlobalEnv &sigma,
                         const LocalEnv &gamma, const Term &t);
RefineResult force_type(MetaEnv phi, const GlobalEnv &sigma,
                        const LocalEnv &gamma, const Term &t);
RefineResult reconstruct_with_type(MetaEnv phi, const GlobalEnv &sigma,
                                   const LocalEnv &gamma, const Term &t,
                                   const Term &expected);
RefineResult essence(MetaEnv phi, const GlobalEnv &sigma,
                     const EssenceEnv &psi, const Term &t);
MetaEnv essence_with_hint(MetaEnv phi, const GlobalEnv &sigma,
                          const EssenceEnv &psi, const Term &m, const Term &t);

/** A fully elaborated, meta-free entry. */
struct Elaborated {
  Term term;
  Term type;
  Term essence;
  Term type_essence;
};

/**
 * Runs both phases on a closed term, against the expected type when given.
 * Throws UnresolvedMeta when a hole in the result stays undetermined.
 */
Elaborated elaborate(const GlobalEnv &sigma, const Term &t,
                     const std::optional<Term> &expected = std::nullopt);

/**
 * Elaborates a closed type; the result's type is its sort and its essence the
 * type essence.
 */
Elaborated elaborate_type(const GlobalEnv &sigma, const Term &t);

}  // namespace bull
