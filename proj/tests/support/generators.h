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

#include <random>
#include <string>
#include <vector>

#include "bull/env.h"
#include "bull/syntax.h"

namespace bull::testing {

using Rng = std::mt19937_64;

/**
 * A random beta-normal term over `vars` free variables and the given
 * constants, with roughly `size` nodes. Binder domains are the constant `o`.
 */
Term random_normal_term(Rng &rng, int vars,
                        const std::vector<std::string> &consts, int size);

// Small first-order pattern language: atoms, `g t` and `f t u`.

/** Every term of exactly the given size over the atoms. */
std::vector<Term> enumerate_fg_terms(const std::vector<Term> &atoms, int size);

/** Size of an fg-term: atoms count 1, each application of f or g adds 1. */
int fg_size(const Term &t);

/** A random fg-term of at most max_size over the atoms. */
Term random_fg_term(Rng &rng, const std::vector<Term> &atoms, int max_size);

/**
 * All closed solutions lambda^k.body (body an fg-term over the k bound
 * variables and the constants c, d) of ?m a1 ... ak = rhs, where the
 * arguments and rhs live in a context of free variables.
 */
std::vector<Term> brute_force_pattern_solutions(const GlobalEnv &sigma,
                                                const EssenceEnv &psi,
                                                const std::vector<Term> &args,
                                                const Term &rhs);

/** The signature the typed generator draws constants from. */
extern const char kTypedSignature[];

/**
 * Concrete syntax of a random well-typed closed term over kTypedSignature.
 * The term mixes beta-redexes, lets, strong pairs and projections, injections
 * consumed by a match, and coercions. type_out receives its type.
 */
std::string random_typed_source(Rng &rng, int depth, std::string *type_out);

/**
 * Whether t contains no beta, eta, zeta, projection or match redex and no
 * defined constant of sigma, and no meta-variable.
 */
bool is_redex_free(const GlobalEnv &sigma, const Term &t);

/**
 * Replaces random subterms of t, a term over gamma, by fresh typed metas
 * declared in phi. Application heads stay rigid.
 */
Term punch_holes(Rng &rng, MetaEnv &phi, const LocalEnv &gamma, const Term &t);

}  // namespace bull::testing
