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

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bull/env.h"
#include "bull/parser.h"

namespace bull {

/** The command table shown by Help. */
extern const char kHelpText[];

struct SessionOptions {
  bool quiet = false;  // no "is defined" / "is assumed" acknowledgements
  bool color = false;
};

class Session {
 public:
  enum class Status { kOk, kFailed, kQuit };

  Session(std::ostream &out, std::ostream &err, SessionOptions opts = {});

  /**
   * Runs the atomic commands of one source command. On failure the error is
   * reported and the signature is left as it was before the list.
   */
  Status run_command_list(const std::vector<Command> &cmds);

  /** Runs every command of a script, stopping at the first failure. */
  Status run_source(const std::shared_ptr<const Source> &source);

  /** Parses and runs a string as a script with an unnamed source. */
  Status run_string(std::string_view text);

  /** Loads a script file, as the Load command does. */
  Status load_file(const std::string &path);

  /**
   * Reads commands from in until Quit or end of input. The prompt is shown
   * only when interactive. Returns 0, or 1 if any command failed.
   */
  int run_loop(std::istream &in, bool interactive);

  const GlobalEnv &sigma() const { return sigma_; }

  /** What Printall shows. */
  std::string printall() const;

 private:
  Status exec(const Command &cmd, std::ostream &out);
  void report(const class Error &e);
  std::string show_entry(const GlobalEntry &e) const;

  std::ostream &out_;
  std::ostream &err_;
  SessionOptions opts_;
  GlobalEnv sigma_;
  std::vector<std::filesystem::path> loading_;  // directories of open scripts
};

}  // namespace bull
