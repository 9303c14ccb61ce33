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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bull/syntax.h"

namespace bull {

/**
 * A term whose variables are names: every identifier is a Const node and no
 * Var or Meta node occurs. Binder names are significant.
 */
struct NamedTerm {
  Term term;
};

/** Structural equality of named terms, ignoring locations only. */
bool same_named(const NamedTerm &a, const NamedTerm &b);

struct Command {
  enum class Kind {
    kHelp,
    kLoad,
    kAxiom,
    kDefinition,
    kPrint,
    kPrintall,
    kCompute,
    kQuit,
  };

  Kind kind;
  Location loc;
  std::string name;  // the declared or queried name, or the Load path
  std::optional<NamedTerm> type;
  std::optional<NamedTerm> body;
};

std::shared_ptr<const Source> make_source(std::string name, std::string text);

NamedTerm parse_term(std::string_view input);
NamedTerm parse_term(const std::shared_ptr<const Source> &source);

/**
 * Parses exactly one period-terminated command, which may stand for several
 * atomic commands.
 */
std::vector<Command> parse_command(std::string_view input);

/** Pulls one source command at a time out of a script. */
class CommandReader {
 public:
  explicit CommandReader(std::shared_ptr<const Source> source);
  ~CommandReader();
  CommandReader(const CommandReader &) = delete;
  CommandReader &operator=(const CommandReader &) = delete;

  bool at_end();
  /** Throws SyntaxError; after an error the reader is exhausted. */
  std::vector<Command> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/**
 * Whether text holds at least one complete command, i.e. a period outside
 * comments and strings. Used to decide when to stop reading input lines.
 */
bool has_complete_command(std::string_view text);

/**
 * Turns bound names into de Bruijn indices. scope lists enclosing names, index
 * 0 being the innermost. Other names become constants.
 */
Term fix_index(const NamedTerm &t, const std::vector<std::string> &scope = {});

/**
 * Turns indices back into names, renaming binders whose name would capture a
 * free occurrence (y becomes y0, then y1, ...). scope is as for fix_index.
 */
NamedTerm fix_id(const Term &t, const std::vector<std::string> &scope = {});

/** Concrete syntax of a named term, reparsable by parse_term. */
std::string print(const NamedTerm &t);

/** Shorthand for print(fix_id(t, scope)). */
std::string print_term(const Term &t, const std::vector<std::string> &scope = {});

}  // namespace bull
