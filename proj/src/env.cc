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

#include "bull/env.h"

#include <fmt/core.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "bull/errors.h"

namespace bull {

LocalEnv LocalEnv::push(LocalEntry entry) const {
  LocalEnv out;
  out.top_ = std::make_shared<const Node>(
      Node{std::move(entry), top_, size() + 1});
  return out;
}

LocalEnv LocalEnv::push_decl(std::string name, Term type) const {
  return push(LocalEntry{std::move(name), std::move(type), Term()});
}

LocalEnv LocalEnv::push_def(std::string name, Term body, Term type) const {
  return push(LocalEntry{std::move(name), std::move(type), std::move(body)});
}

LocalEnv LocalEnv::push_bare(std::string name) const {
  return push(LocalEntry{std::move(name), Term(), Term()});
}

LocalEnv LocalEnv::pop() const {
  if (!top_) throw InternalError("pop on an empty context");
  LocalEnv out;
  out.top_ = top_->next;
  return out;
}

const LocalEntry &LocalEnv::at(int i) const {
  const Node *n = top_.get();
  for (int k = 0; n != nullptr && k < i; ++k) n = n->next.get();
  if (n == nullptr || i < 0) {
    throw InternalError(
        fmt::format("variable index {} out of range (context size {})", i,
                    size()));
  }
  return n->entry;
}

std::vector<LocalEntry> LocalEnv::bottom_up() const {
  std::vector<LocalEntry> out;
  out.reserve(size());
  for (const Node *n = top_.get(); n != nullptr; n = n->next.get()) {
    out.push_back(n->entry);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::string> LocalEnv::names() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const Node *n = top_.get(); n != nullptr; n = n->next.get()) {
    out.push_back(n->entry.name);
  }
  return out;
}

VarInfo find_var(const LocalEnv &gamma, int index) {
  const LocalEntry &e = gamma.at(index);
  VarInfo info;
  if (e.body) info.body = lift(0, index + 1, e.body);
  if (e.type) info.type = lift(0, index + 1, e.type);
  return info;
}

std::vector<Term> erase_context(const LocalEnv &gamma) {
  std::vector<Term> out;
  int n = gamma.size();
  out.reserve(n);
  for (int i = n - 1; i >= 0; --i) out.push_back(mk_var({}, i));
  return out;
}

EssenceEnv bare_context(const LocalEnv &gamma) {
  EssenceEnv psi;
  for (const LocalEntry &e : gamma.bottom_up()) psi = psi.push_bare(e.name);
  return psi;
}

void GlobalEnv::check_fresh(const Location &loc,
                            const std::string &name) const {
  if (contains(name)) {
    throw CommandError(fmt::format("{} already exists", name), loc);
  }
}

void GlobalEnv::add_axiom(const Location &loc, std::string name, Term type,
                          Term type_essence) {
  check_fresh(loc, name);
  index_.emplace(name, entries_.size());
  entries_.push_back(GlobalEntry{std::move(name), false, Term(), Term(),
                                 std::move(type_essence), std::move(type)});
}

void GlobalEnv::add_definition(const Location &loc, std::string name,
                               Term body, Term type, Term essence,
                               Term type_essence) {
  check_fresh(loc, name);
  index_.emplace(name, entries_.size());
  entries_.push_back(GlobalEntry{std::move(name), true, std::move(essence),
                                 std::move(body), std::move(type_essence),
                                 std::move(type)});
}

const GlobalEntry *GlobalEnv::find(const std::string &name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::optional<ConstInfo> find_const(const GlobalEnv &sigma, bool is_essence,
                                    const std::string &name) {
  const GlobalEntry *e = sigma.find(name);
  if (e == nullptr) return std::nullopt;
  ConstInfo info;
  info.type = is_essence ? e->type_essence : e->type;
  if (e->is_definition) info.body = is_essence ? e->essence : e->body;
  return info;
}

int MetaEnv::fresh(MetaDecl decl, Location origin) {
  int id = next_id();
  std::visit([this](auto &&d) { entries_.emplace_back(std::move(d)); },
             std::move(decl));
  origins_.push_back(std::move(origin));
  return id;
}

const MetaEntry &MetaEnv::entry(int id) const {
  if (id < 0 || id >= next_id()) {
    throw InternalError(fmt::format("unknown meta-variable ?{}", id));
  }
  return entries_[id];
}

const Location &MetaEnv::origin(int id) const {
  entry(id);
  return origins_[id];
}

bool MetaEnv::is_instantiated(int id) const {
  const MetaEntry &e = entry(id);
  return std::holds_alternative<SortDef>(e) ||
         std::holds_alternative<TypedDef>(e) ||
         std::holds_alternative<EssDef>(e);
}

bool MetaEnv::is_sort(int id) const {
  const MetaEntry &e = entry(id);
  return std::holds_alternative<SortDecl>(e) ||
         std::holds_alternative<SortDef>(e);
}

bool MetaEnv::is_essence(int id) const {
  const MetaEntry &e = entry(id);
  return std::holds_alternative<EssDecl>(e) ||
         std::holds_alternative<EssDef>(e);
}

const LocalEnv &MetaEnv::context(int id) const {
  static const LocalEnv kEmpty;
  const MetaEntry &e = entry(id);
  if (auto *d = std::get_if<TypedDecl>(&e)) return d->ctx;
  if (auto *d = std::get_if<TypedDef>(&e)) return d->ctx;
  if (auto *d = std::get_if<EssDecl>(&e)) return d->ctx;
  if (auto *d = std::get_if<EssDef>(&e)) return d->ctx;
  return kEmpty;
}

Term MetaEnv::solution(int id) const {
  const MetaEntry &e = entry(id);
  if (auto *d = std::get_if<SortDef>(&e)) return d->value;
  if (auto *d = std::get_if<TypedDef>(&e)) return d->body;
  if (auto *d = std::get_if<EssDef>(&e)) return d->body;
  return Term();
}

void MetaEnv::instantiate(int id, Term solution) {
  MetaEntry &e = entries_.at(id);
  if (std::holds_alternative<SortDecl>(e)) {
    if (!solution.is(TermKind::kSort) && !solution.is(TermKind::kMeta)) {
      throw InternalError(fmt::format("sort meta ?{} given a non-sort", id));
    }
    e = SortDef{std::move(solution)};
  } else if (auto *d = std::get_if<TypedDecl>(&e)) {
    e = TypedDef{d->ctx, std::move(solution), d->type};
  } else if (auto *d = std::get_if<EssDecl>(&e)) {
    e = EssDef{d->ctx, std::move(solution)};
  } else {
    throw InternalError(fmt::format("meta-variable ?{} instantiated twice", id));
  }
}

std::optional<int> MetaEnv::essence_meta_of(int id) const {
  auto it = essence_of_.find(id);
  if (it == essence_of_.end()) return std::nullopt;
  return it->second;
}

void MetaEnv::set_essence_meta(int id, int essence_id) {
  essence_of_[id] = essence_id;
}

std::pair<MetaEnv, int> fresh_meta(MetaEnv phi, MetaDecl decl) {
  int id = phi.fresh(std::move(decl));
  return {std::move(phi), id};
}

MetaEnv instantiate_meta(MetaEnv phi, int id, Term solution) {
  phi.instantiate(id, std::move(solution));
  return phi;
}

}  // namespace bull
