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

#include "bull/repl.h"

#include <fmt/core.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "bull/errors.h"
#include "bull/eval.h"
#include "bull/refine.h"

namespace bull {

const char kHelpText[] =
    R"(Help.                               show this list of commands
Load "file".                        for loading a script file
Axiom term : type.                  define a constant or an axiom
Definition name [: type] := term.   define a term
Print name.                         print the definition of name
Printall.                           print all the signature
                                    (axioms and definitions)
Compute name.                       normalize name and print the result
Quit.                               quit
)";

namespace {

constexpr const char *kRed = "\033[1;31m";
constexpr const char *kReset = "\033[0m";

std::string colorize(const std::string &text) {
  std::istringstream in(text);
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("Error:", 0) == 0) {
      out += fmt::format("{}Error:{}{}", kRed, kReset, line.substr(6));
    } else if (line.find('^') != std::string::npos &&
               line.find_first_not_of(" ^") == std::string::npos) {
      std::size_t first = line.find('^');
      out += line.substr(0, first) + kRed + line.substr(first) + kReset;
    } else {
      out += line;
    }
    out += '\n';
  }
  return out;
}

}  // namespace

Session::Session(std::ostream &out, std::ostream &err, SessionOptions opts)
    : out_(out), err_(err), opts_(opts) {}

void Session::report(const Error &e) {
  std::string text = format_error(e);
  err_ << (opts_.color ? colorize(text) : text);
}

std::string Session::show_entry(const GlobalEntry &e) const {
  if (e.is_definition) {
    return fmt::format("{} := {}\n     : {}\n", e.name, print_term(e.body),
                       print_term(e.type));
  }
  return fmt::format("{} : {}\n", e.name, print_term(e.type));
}

std::string Session::printall() const {
  std::string out;
  for (const GlobalEntry &e : sigma_.entries()) out += show_entry(e);
  return out;
}

Session::Status Session::run_command_list(const std::vector<Command> &cmds) {
  GlobalEnv snapshot = sigma_;
  // Output is held back until the whole list succeeds.
  std::ostringstream pending;
  for (const Command &cmd : cmds) {
    Status s;
    try {
      s = exec(cmd, pending);
    } catch (const Error &e) {
      report(e);
      sigma_ = std::move(snapshot);
      return Status::kFailed;
    } catch (const InternalError &e) {
      err_ << "Error: internal error: " << e.what() << '\n';
      sigma_ = std::move(snapshot);
      return Status::kFailed;
    }
    // A failed Load has reported its error and keeps what it loaded.
    if (s != Status::kOk) {
      out_ << pending.str();
      return s;
    }
  }
  out_ << pending.str();
  return Status::kOk;
}

Session::Status Session::run_source(const std::shared_ptr<const Source> &source) {
  CommandReader reader(source);
  while (true) {
    std::vector<Command> cmds;
    try {
      if (reader.at_end()) return Status::kOk;
      cmds = reader.next();
    } catch (const Error &e) {
      report(e);
      return Status::kFailed;
    }
    Status s = run_command_list(cmds);
    if (s != Status::kOk) return s;
  }
}

Session::Status Session::run_string(std::string_view text) {
  return run_source(make_source("", std::string(text)));
}

Session::Status Session::load_file(const std::string &path) {
  namespace fs = std::filesystem;
  fs::path resolved = path;
  if (!fs::exists(resolved) && !loading_.empty() && resolved.is_relative()) {
    fs::path alt = loading_.back() / path;
    if (fs::exists(alt)) resolved = alt;
  }
  std::ifstream in(resolved, std::ios::binary);
  if (!in || fs::is_directory(resolved)) {
    throw CommandError(fmt::format("cannot open file \"{}\"", path), {});
  }
  std::stringstream buf;
  buf << in.rdbuf();
  loading_.push_back(resolved.parent_path());
  Status s = run_source(make_source(resolved.string(), buf.str()));
  loading_.pop_back();
  return s;
}

Session::Status Session::exec(const Command &cmd, std::ostream &out) {
  switch (cmd.kind) {
    case Command::Kind::kHelp:
      out << kHelpText;
      return Status::kOk;

    case Command::Kind::kQuit:
      return Status::kQuit;

    case Command::Kind::kLoad:
      try {
        return load_file(cmd.name);
      } catch (const CommandError &e) {
        throw CommandError(e.msg, cmd.loc);
      }

    case Command::Kind::kAxiom: {
      if (sigma_.contains(cmd.name)) {
        throw CommandError(fmt::format("{} already exists", cmd.name), cmd.loc);
      }
      Elaborated e = elaborate_type(sigma_, fix_index(*cmd.type));
      sigma_.add_axiom(cmd.loc, cmd.name, e.term, e.essence);
      if (!opts_.quiet) out << cmd.name << " is assumed.\n";
      return Status::kOk;
    }

    case Command::Kind::kDefinition: {
      if (sigma_.contains(cmd.name)) {
        throw CommandError(fmt::format("{} already exists", cmd.name), cmd.loc);
      }
      std::optional<Term> type;
      if (cmd.type) type = fix_index(*cmd.type);
      Elaborated e = elaborate(sigma_, fix_index(*cmd.body), type);
      sigma_.add_definition(cmd.loc, cmd.name, e.term, e.type, e.essence,
                            e.type_essence);
      if (!opts_.quiet) out << cmd.name << " is defined.\n";
      return Status::kOk;
    }

    case Command::Kind::kPrint: {
      const GlobalEntry *e = sigma_.find(cmd.name);
      if (e == nullptr) {
        throw CommandError(fmt::format("unknown name \"{}\"", cmd.name), cmd.loc);
      }
      out << show_entry(*e);
      return Status::kOk;
    }

    case Command::Kind::kPrintall:
      out << printall();
      return Status::kOk;

    case Command::Kind::kCompute: {
      if (!sigma_.contains(cmd.name)) {
        throw CommandError(fmt::format("unknown name \"{}\"", cmd.name), cmd.loc);
      }
      Term nf = strongly_normalize(false, sigma_, {}, mk_const(cmd.loc, cmd.name));
      out << print_term(nf) << '\n';
      return Status::kOk;
    }
  }
  throw InternalError("unknown command");
}

int Session::run_loop(std::istream &in, bool interactive) {
  bool failed = false;
  std::string buffer;
  std::string line;
  auto flush = [&]() -> Status {
    Status s = run_string(buffer);
    buffer.clear();
    if (s == Status::kFailed) failed = true;
    return s;
  };
  while (true) {
    if (interactive) out_ << (buffer.empty() ? "> " : "  ") << std::flush;
    if (!std::getline(in, line)) break;
    buffer += line;
    buffer += '\n';
    if (has_complete_command(buffer) && flush() == Status::kQuit) {
      return failed ? 1 : 0;
    }
  }
  if (buffer.find_first_not_of(" \t\r\n") != std::string::npos) flush();
  if (interactive) out_ << '\n';
  return failed ? 1 : 0;
}

}  // namespace bull
