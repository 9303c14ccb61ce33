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
 * Makes t1 and t2 convertible by instantiating metas of phi; returns the
 * extended environment. Throws UnificationFailure.
 */
MetaEnv unify(MetaEnv phi, const GlobalEnv &sigma, const LocalEnv &gamma,
              const Term &t1, const Term &t2);

/** As unify, but reports failure as an empty result. */
std::optional<MetaEnv> try_unify(const MetaEnv &phi, const GlobalEnv &sigma,
                                 const LocalEnv &gamma, const Term &t1,
                                 const Term &t2);

/**
 * Pattern unification of flex (?m[S] or ?m[S] a1 ... ak) against rhs.
 * Variables occurring once among S and the arguments are abstracted; other
 * positions are left unused. Free variables of rhs outside the pattern are
 * pruned from inner metas when possible. Empty when the problem is outside the
 * fragment; throws UnificationFailure when ?m occurs in rhs.
 */
std::optional<MetaEnv> try_hopu(const MetaEnv &phi, const GlobalEnv &sigma,
                                const LocalEnv &gamma, const Term &flex,
                                const Term &rhs);

/** Unification of essences; psi carries no types. */
MetaEnv unify_essence(MetaEnv phi, const GlobalEnv &sigma,
                      const EssenceEnv &psi, const Term &m1, const Term &m2);

}  // namespace bull
