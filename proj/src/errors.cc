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

#include "bull/errors.h"

#include <fmt/core.h>

#include <algorithm>
#include <string>
#include <string_view>

namespace bull {

namespace {

std::string_view nth_line(std::string_view text, int line) {
  std::size_t pos = 0;
  for (int l = 1; l < line; ++l) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) return {};
    pos = nl + 1;
  }
  std::size_t end = text.find('\n', pos);
  if (end == std::string_view::npos) end = text.size();
  std::string_view out = text.substr(pos, end - pos);
  if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
  return out;
}

}  // namespace

std::string format_error(const Error &e) {
  std::string out;
  const Location &loc = e.location;
  if (loc.source) {
    if (!loc.source->name.empty()) {
      out += fmt::format("File \"{}\", line {}, characters {}-{}:\n",
                         loc.source->name, loc.start.line, loc.start.column,
                         loc.end.line == loc.start.line ? loc.end.column
                                                        : loc.start.column + 1);
    }
    std::string_view line = nth_line(loc.source->text, loc.start.line);
    int start = std::min<int>(loc.start.column, static_cast<int>(line.size()));
    int end = loc.end.line == loc.start.line ? loc.end.column
                                             : static_cast<int>(line.size());
    end = std::max(end, start + 1);
    out += line;
    out += '\n';
    out += std::string(start, ' ');
    out += std::string(end - start, '^');
    out += '\n';
  }
  out += "Error: ";
  out += e.msg;
  out += '\n';
  return out;
}

}  // namespace bull
