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

#include "dqsynth/external.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

#include "dqsynth/dqdimacs.hpp"

namespace dqsynth {

namespace {

std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

bool line_has_word(const std::string &line, const std::string &word) {
  size_t pos = 0;
  while ((pos = line.find(word, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(
                                   line[pos - 1]));
    size_t end = pos + word.size();
    bool right_ok = end >= line.size() ||
                    !std::isalnum(static_cast<unsigned char>(line[end]));
    if (left_ok && right_ok)
      return true;
    ++pos;
  }
  return false;
}

} // namespace

ExternalResult run_external_solver(const std::string &command,
                                   const DqbfInstance &instance) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  fs::path file =
      dir / ("dqsynth-" + std::to_string(::getpid()) + "-" +
             std::to_string(
                 std::chrono::steady_clock::now().time_since_epoch().count()) +
             ".dqdimacs");
  {
    std::ofstream out(file);
    if (!out)
      throw std::runtime_error("cannot create temporary file " +
                               file.string());
    out << write_dqdimacs(instance);
  }

  std::string cmdline = command + " " + shell_quote(file.string()) + " 2>&1";
  FILE *pipe = ::popen(cmdline.c_str(), "r");
  if (!pipe) {
    fs::remove(file);
    throw std::runtime_error("failed to run external solver: " + command);
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0)
    output.append(buf, got);
  int status = ::pclose(pipe);
  fs::remove(file);

  ExternalResult result;
  bool have_verdict = false;
  std::string cert_text;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.rfind("f ", 0) == 0) {
      cert_text += line;
      cert_text += '\n';
      continue;
    }
    if (have_verdict)
      continue;
    if (line == "r TRUE" || line.rfind("r TRUE", 0) == 0) {
      result.verdict = Verdict::True;
      have_verdict = true;
    } else if (line == "r FALSE" || line.rfind("r FALSE", 0) == 0) {
      result.verdict = Verdict::False;
      have_verdict = true;
    } else if (line.rfind("s cnf 1", 0) == 0) {
      result.verdict = Verdict::True;
      have_verdict = true;
    } else if (line.rfind("s cnf 0", 0) == 0) {
      result.verdict = Verdict::False;
      have_verdict = true;
    } else if (line_has_word(line, "UNSAT") ||
               line_has_word(line, "UNSATISFIABLE")) {
      result.verdict = Verdict::False;
      have_verdict = true;
    } else if (line_has_word(line, "SAT") ||
               line_has_word(line, "SATISFIABLE")) {
      result.verdict = Verdict::True;
      have_verdict = true;
    }
  }
  if (!have_verdict && WIFEXITED(status)) {
    int code = WEXITSTATUS(status);
    if (code == 10) {
      result.verdict = Verdict::True;
      have_verdict = true;
    } else if (code == 20) {
      result.verdict = Verdict::False;
      have_verdict = true;
    }
  }
  if (!have_verdict)
    throw std::runtime_error(
        "external solver produced no recognizable verdict; output was:\n" +
        output);
  if (!cert_text.empty()) {
    result.solution = parse_certificate(cert_text);
    result.has_solution = true;
  }
  return result;
}

} // namespace dqsynth
