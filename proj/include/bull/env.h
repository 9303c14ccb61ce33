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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "bull/syntax.h"

namespace bull {

/**
 * One local entry. A declaration has no body; a definition has one; an
 * essence-context entry has no type.
 */
struct LocalEntry {
  std::string name;
  Term type;
  Term body;
};

/**
 * A persistent de Bruijn stack; index 0 is the most recent entry. Entries are
 * stored relative to the point where they were pushed.
 *
 * The same structure serves as the essence context, where entries carry no
 * type and definitions carry the essence of the bound term.
 */
class LocalEnv {
 public:
  LocalEnv() = default;

  LocalEnv push(LocalEntry entry) const;
  LocalEnv push_decl(std::string name, Term type) const;
  LocalEnv push_def(std::string name, Term body, Term type) const;
  LocalEnv push_bare(std::string name) const;
  /** Drops the most recent entry. */
  LocalEnv pop() const;

  int size() const { return top_ ? top_->size : 0; }
  bool empty() const { return top_ == nullptr; }

  /** The raw entry at de Bruijn index i, not lifted. */
  const LocalEntry &at(int i) const;

  /** Entries ordered from the outermost to the most recent. */
  std::vector<LocalEntry> bottom_up() const;

  /** Binder names, index 0 being the most recent. */
  std::vector<std::string> names() const;

 private:
  struct Node {
    LocalEntry entry;
    std::shared_ptr<const Node> next;
    int size;
  };
  std::shared_ptr<const Node> top_;
};

using EssenceEnv = LocalEnv;

struct VarInfo {
  Term body;  // null for declarations
  Term type;  // null in essence contexts
};

/** Entry i of gamma with body and type lifted to the query point. */
VarInfo find_var(const LocalEnv &gamma, int index);

/** The variables of gamma as [Var n-1; ...; Var 0]. */
std::vector<Term> erase_context(const LocalEnv &gamma);

/** Strips types and keeps definitions; used when entering the essence phase. */
EssenceEnv bare_context(const LocalEnv &gamma);

struct GlobalEntry {
  std::string name;
  bool is_definition = false;
  Term essence;  // definitions only
  Term body;     // definitions only
  Term type_essence;
  Term type;
};

struct ConstInfo {
  Term body;  // null for axioms
  Term type;
};

class GlobalEnv {
 public:
  /** Adds an axiom; throws CommandError if the name is taken. */
  void add_axiom(const Location &loc, std::string name, Term type,
                 Term type_essence);
  void add_definition(const Location &loc, std::string name, Term body,
                      Term type, Term essence, Term type_essence);

  const GlobalEntry *find(const std::string &name) const;
  bool contains(const std::string &name) const { return find(name) != nullptr; }
  const std::vector<GlobalEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  void check_fresh(const Location &loc, const std::string &name) const;

  std::vector<GlobalEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/**
 * Definition body and type of a constant, or essence and type essence when
 * is_essence; axioms have no body. Empty when unbound.
 */
std::optional<ConstInfo> find_const(const GlobalEnv &sigma, bool is_essence,
                                    const std::string &name);

// Meta-variable entries.
struct SortDecl {};
struct SortDef {
  Term value;  // a Sort, or another sort meta
};
struct TypedDecl {
  LocalEnv ctx;
  Term type;
};
struct TypedDef {
  LocalEnv ctx;
  Term body;
  Term type;
};
struct EssDecl {
  EssenceEnv ctx;
};
struct EssDef {
  EssenceEnv ctx;
  Term body;
};

using MetaEntry =
    std::variant<SortDecl, SortDef, TypedDecl, TypedDef, EssDecl, EssDef>;
using MetaDecl = std::variant<SortDecl, TypedDecl, EssDecl>;

/**
 * Meta-variable declarations and their write-once instantiations. A value
 * type: copying takes a snapshot.
 */
class MetaEnv {
 public:
  int next_id() const { return static_cast<int>(entries_.size()); }

  int fresh(MetaDecl decl, Location origin = {});
  void instantiate(int id, Term solution);

  const MetaEntry &entry(int id) const;
  const Location &origin(int id) const;
  bool is_instantiated(int id) const;
  bool is_sort(int id) const;
  bool is_essence(int id) const;
  /** The declared context of a typed or essence meta (empty for sorts). */
  const LocalEnv &context(int id) const;
  /** The instantiation, or null. */
  Term solution(int id) const;

  /** The essence meta standing for typed meta id, created on demand. */
  std::optional<int> essence_meta_of(int id) const;
  void set_essence_meta(int id, int essence_id);

 private:
  std::vector<MetaEntry> entries_;
  std::vector<Location> origins_;
  std::map<int, int> essence_of_;
};

std::pair<MetaEnv, int> fresh_meta(MetaEnv phi, MetaDecl decl);
MetaEnv instantiate_meta(MetaEnv phi, int id, Term solution);

}  // namespace bull
