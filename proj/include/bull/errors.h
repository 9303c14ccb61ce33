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

#include <stdexcept>
#include <string>

#include "bull/syntax.h"

namespace bull {

/** Base class of every user-facing error; carries the blamed location. */
class Error : public std::runtime_error {
 public:
  Error(std::string msg, Location location)
      : std::runtime_error(msg), msg(std::move(msg)), location(std::move(location)) {}

  std::string msg;
  Location location;
};

class SyntaxError : public Error {
 public:
  using Error::Error;
};

/** Unbound names, non-functions, PTS violations, mismatches. */
class TypeError : public Error {
 public:
  using Error::Error;
};

class NotAType : public TypeError {
 public:
  using TypeError::TypeError;
};

class UnificationFailure : public Error {
 public:
  UnificationFailure(std::string msg, Location location, Term lhs, Term rhs)
      : Error(std::move(msg), std::move(location)),
        lhs(std::move(lhs)),
        rhs(std::move(rhs)) {}

  Term lhs;
  Term rhs;
};

class EssenceMismatch : public Error {
 public:
  using Error::Error;
};

class UnresolvedMeta : public Error {
 public:
  UnresolvedMeta(std::string msg, Location location, int id)
      : Error(std::move(msg), std::move(location)), id(id) {}

  int id;
};

/** Failures of REPL commands that are not elaboration errors. */
class CommandError : public Error {
 public:
  using Error::Error;
};

/** A broken internal invariant; never the user's fault. */
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * Renders an error the way the REPL shows it: the source line, a caret
 * underline below the blamed span, then "Error: <msg>".
 */
std::string format_error(const Error &e);

}  // namespace bull
