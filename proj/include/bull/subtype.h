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

#include "bull/env.h"
#include "bull/syntax.h"

namespace bull {

/** Arrow normal form: arrows distributed over domain unions and codomain intersections. */
Term anf(const Term &t);

/** Conjunctive normal form: an intersection of unions of arrow normal forms. */
Term canf(const Term &t);

/** Disjunctive normal form: a union of intersections of arrow normal forms. */
Term danf(const Term &t);

/** The structural check on a danf left side and a canf right side. */
bool is_subtype_nf(const Term &a, const Term &b);

/**
 * Whether a <= b. Both sides are normalized first; phi, when given, expands
 * instantiated metas.
 */
bool is_subtype(const GlobalEnv &sigma, const LocalEnv &gamma, const Term &a,
                const Term &b, const MetaEnv *phi = nullptr);

}  // namespace bull
