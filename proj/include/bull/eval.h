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

inline constexpr long kDefaultFuel = 1'000'000;

struct NormalizeOptions {
  bool is_essence = false;
  // When set, instantiated metas are expanded and the others are kept as
  // neutral terms. When null, any meta is an internal error.
  const MetaEnv *phi = nullptr;
  long fuel = kDefaultFuel;
};

/**
 * Applicative-order reducer for beta, eta, projections, injections, zeta and
 * the delta rules of the global, local and meta environments.
 */
class Normalizer {
 public:
  Normalizer(const GlobalEnv &sigma, NormalizeOptions opts)
      : sigma_(sigma), opts_(opts), fuel_(opts.fuel) {}

  /** Full normal form. */
  Term normalize(const LocalEnv &ctx, const Term &t);

  /** Reduces only until the top constructor is exposed. */
  Term whnf(const LocalEnv &ctx, const Term &t);

 private:
  void tick();
  Term unfold_var(const LocalEnv &ctx, const Term &t) const;
  Term unfold_const(const Term &t) const;
  Term unfold_meta(const Term &t) const;

  const GlobalEnv &sigma_;
  NormalizeOptions opts_;
  long fuel_;
};

/** Normal form of a meta-free term. */
Term strongly_normalize(bool is_essence, const GlobalEnv &sigma,
                        const LocalEnv &ctx, const Term &t,
                        long fuel = kDefaultFuel);

/** Normal form modulo the uninstantiated metas of phi. */
Term normalize_with_metas(const MetaEnv &phi, bool is_essence,
                          const GlobalEnv &sigma, const LocalEnv &ctx,
                          const Term &t);

/** Weak head normal form; phi may be null. */
Term whnf(const MetaEnv *phi, bool is_essence, const GlobalEnv &sigma,
          const LocalEnv &ctx, const Term &t);

/** Whether Var 0 does not occur in t, so its binder can be dropped. */
bool is_eta(const Term &t);

/**
 * The solution of an instantiated meta with its suspension substituted for
 * the declared context; empty when the meta is only declared.
 */
std::optional<Term> delta_phi_expand(const MetaEnv &phi, const Term &meta);

/** Replaces the context variables of body (a term over ctx_size entries). */
Term substitute_context(const Term &body, const std::vector<Term> &suspension);

/**
 * Replaces every instantiated meta in t by its expansion, contracting the
 * beta-redexes this creates at application heads.
 */
Term instantiate_metas(const MetaEnv &phi, const Term &t);

}  // namespace bull
