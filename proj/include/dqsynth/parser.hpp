// Copyright 2026 The dqsynth Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DQSYNTH_PARSER_HPP
#define DQSYNTH_PARSER_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqsynth/problem.hpp"

namespace dqsynth {

struct SourcePos {
  int line = 0;
  int col = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourcePos pos, const std::string &message)
      : std::runtime_error(std::to_string(pos.line) + ":" +
                           std::to_string(pos.col) + ": " + message),
        pos(pos) {}
  SourcePos pos;
};

// Parses a SyGuS-style document (declare-var / synth-fun / constraint /
// check-synth over Bool and BV). Grammars inside synth-fun are retained as
// opaque text and ignored; a note goes to `diagnostics` when one is seen.
// `let` bindings are inlined. Throws ParseError with a source position.
SynthProblem parse_problem(std::string_view text,
                           std::ostream *diagnostics = nullptr);

// Parses a sequence of define-fun forms (solution files).
std::vector<FunctionDefinition> parse_definitions(std::string_view text);

} // namespace dqsynth

#endif
