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

// Command-line front end: runs the given scripts, or a REPL on stdin.

#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bull/errors.h"
#include "bull/repl.h"

int main(int argc, char **argv) {
  CLI::App app{"Bull: a proof checker for the Delta-framework"};
  std::vector<std::string> scripts;
  bool no_color = false;
  bool quiet = false;
  app.add_option("scripts", scripts, "script files to run, then exit");
  app.add_flag("--no-color", no_color, "disable colored error output");
  app.add_flag("--quiet", quiet, "do not acknowledge axioms and definitions");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bull::SessionOptions opts;
  opts.quiet = quiet;
  opts.color = !no_color && isatty(STDERR_FILENO);
  bull::Session session(std::cout, std::cerr, opts);

  if (!scripts.empty()) {
    for (const std::string &path : scripts) {
      bull::Session::Status s = bull::Session::Status::kFailed;
      try {
        s = session.load_file(path);
      } catch (const bull::Error &e) {
        std::cerr << bull::format_error(e);
      }
      if (s == bull::Session::Status::kFailed) return 1;
      if (s == bull::Session::Status::kQuit) return 0;
    }
    return 0;
  }
  return session.run_loop(std::cin, isatty(STDIN_FILENO));
}
