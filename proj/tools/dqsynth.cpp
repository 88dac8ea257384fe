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

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqsynth/ackermann.hpp"
#include "dqsynth/bitblast.hpp"
#include "dqsynth/callsig.hpp"
#include "dqsynth/dqdimacs.hpp"
#include "dqsynth/dqf.hpp"
#include "dqsynth/external.hpp"
#include "dqsynth/lift.hpp"
#include "dqsynth/parser.hpp"
#include "dqsynth/printer.hpp"
#include "dqsynth/qbf2sygus.hpp"
#include "dqsynth/solver.hpp"

namespace {

using dqsynth::Verdict;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;         // internal error, I/O failure
constexpr int kExitParse = 2;         // unparsable or ill-formed input
constexpr int kExitResourceLimit = 3; // bound, budget, or timeout hit
constexpr int kExitExternal = 4;      // external solver or certificate failure
constexpr int kExitNegative = 20;     // unrealizable / FALSE / INVALID

// Thrown where the exit code is already decided; main turns it into a
// message on stderr plus that code.
struct Bail {
  int code;
  std::string message;
};

struct Options {
  std::string engine = "auto";
  int expansion_bound = 16;
  double timeout_seconds = 0.0; // 0 disables the deadline
  uint64_t seed = 0;            // reserved; the built-in engines are
                                // deterministic
  bool emit_json = false;
  bool dump_callsigns = false;
  bool dump_ackermann = false;
  bool dump_dqf = false;
  bool print_certificate = false;
  std::string output_path;

  std::chrono::steady_clock::time_point started =
      std::chrono::steady_clock::now();

  dqsynth::SolverOptions solver() const {
    dqsynth::SolverOptions o;
    o.expansion_bound = expansion_bound;
    if (timeout_seconds > 0.0) {
      o.has_deadline = true;
      o.deadline = started + std::chrono::microseconds(int64_t(
                                 timeout_seconds * 1e6));
    }
    return o;
  }

  void check_deadline(const std::string &stage) const {
    if (solver().deadline_passed())
      throw Bail{kExitResourceLimit, "timeout before " + stage};
  }
};

// Per-stage wall-clock times; every executed stage is recorded exactly once.
class StageTimes {
public:
  template <typename F> auto run(const char *name, F &&f) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, t0);
    } else {
      auto result = f();
      record(name, t0);
      return result;
    }
  }

  const json &table() const { return times_; }

private:
  void record(const char *name, std::chrono::steady_clock::time_point t0) {
    std::chrono::duration<double, std::milli> dt =
        std::chrono::steady_clock::now() - t0;
    times_[name] = dt.count();
  }

  json times_;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Bail{kExitError, "cannot read '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const Options &opts, const std::string &text) {
  if (opts.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output_path, std::ios::binary);
  if (!out)
    throw Bail{kExitError, "cannot write '" + opts.output_path + "'"};
  out << text;
}

// The frontend half shared by synth and compile: SyGuS text down to a
// clausal instance.
struct Compiled {
  dqsynth::SynthProblem original;
  dqsynth::CallSignIndex index;
  dqsynth::AckermannTrace trace;
  dqsynth::DqbfInstance instance;
};

Compiled compile_frontend(const std::string &text, const Options &opts,
                          StageTimes &times) {
  Compiled c;
  c.original = times.run("parse", [&] { return dqsynth::parse_problem(text); });
  dqsynth::SynthProblem normalized = times.run(
      "normalize", [&] { return dqsynth::normalize_arguments(c.original); });
  c.index =
      times.run("callsigns", [&] { return dqsynth::analyze(normalized); });
  if (opts.dump_callsigns)
    std::cerr << dqsynth::format_callsign_index(c.index);
  dqsynth::SynthProblem single = times.run("ackermann", [&] {
    auto [problem, trace] = dqsynth::to_single_callsign(normalized, c.index);
    c.trace = std::move(trace);
    return problem;
  });
  if (opts.dump_ackermann)
    std::cerr << dqsynth::format_trace(c.trace);
  dqsynth::DqfFormula dqf =
      times.run("dqf", [&] { return dqsynth::to_dqf(single); });
  if (opts.dump_dqf)
    std::cerr << dqsynth::format_dqf(dqf);
  opts.check_deadline("bit-blasting");
  c.instance = times.run("blast", [&] { return dqsynth::blast(dqf); });
  return c;
}

dqsynth::SolveOutcome run_engine(const Options &opts,
                                 const dqsynth::DqbfInstance &instance) {
  const std::string &engine = opts.engine;
  if (engine == "expansion")
    return dqsynth::solve_expansion(instance, opts.solver());
  if (engine == "2qbf") {
    try {
      return dqsynth::solve_2qbf(instance, opts.solver());
    } catch (const std::logic_error &e) {
      throw Bail{kExitParse, std::string("--engine 2qbf: ") + e.what()};
    }
  }
  if (engine == "auto")
    return dqsynth::solve_auto(instance, opts.solver());
  if (engine.rfind("external:", 0) == 0) {
    std::string command = engine.substr(9);
    if (command.empty())
      throw Bail{kExitParse, "--engine external: needs a command"};
    dqsynth::ExternalResult ext;
    try {
      ext = dqsynth::run_external_solver(command, instance);
    } catch (const std::runtime_error &e) {
      throw Bail{kExitExternal, std::string("external solver: ") + e.what()};
    }
    dqsynth::SolveOutcome out;
    out.verdict = ext.verdict;
    if (ext.has_solution) {
      // Never trust a subprocess: a bad certificate is an engine failure.
      auto check = dqsynth::verify_solution(instance, ext.solution);
      if (!check.valid)
        throw Bail{kExitExternal,
                   "external solver produced an invalid certificate"};
      out.solution = ext.solution;
    } else if (ext.verdict == Verdict::True) {
      out.limit_reason = "external solver gave no certificate";
    }
    return out;
  }
  throw Bail{kExitParse, "unknown engine '" + engine + "'"};
}

json base_record(const StageTimes &times) {
  json record;
  record["verdict"] = nullptr;
  record["stage_times_ms"] = times.table();
  return record;
}

void emit_record(json record, const StageTimes &times) {
  record["stage_times_ms"] = times.table();
  std::cout << record.dump(2) << "\n";
}

int cmd_synth(const std::string &path, Options &opts) {
  StageTimes times;
  std::string text = read_file(path);
  Compiled c = compile_frontend(text, opts, times);
  opts.check_deadline("solving");

  dqsynth::SolveOutcome outcome =
      times.run("solve", [&] { return run_engine(opts, c.instance); });

  json record = base_record(times);
  record["n_vars"] = c.instance.num_vars;
  record["n_clauses"] = c.instance.clauses.size();
  record["n_functions"] = c.original.functions.size();
  record["callsign_class"] =
      c.index.single_callsign ? "single" : "multiple";

  if (outcome.verdict == Verdict::ResourceLimit) {
    if (opts.emit_json) {
      record["verdict"] = "unknown";
      emit_record(record, times);
    }
    std::cerr << "resource limit: " << outcome.limit_reason << "\n";
    return kExitResourceLimit;
  }
  if (outcome.verdict == Verdict::False) {
    if (opts.emit_json) {
      record["verdict"] = "unrealizable";
      emit_record(record, times);
    } else {
      std::cerr << "unrealizable\n";
    }
    return kExitNegative;
  }

  if (opts.engine == "2qbf" || opts.engine == "auto" ||
      opts.engine == "expansion") {
    // Belt and braces for the built-in engines too.
    auto check = dqsynth::verify_solution(c.instance, outcome.solution);
    if (!check.valid)
      throw Bail{kExitError, "internal error: solution failed bit-level "
                             "verification"};
  }
  if (outcome.solution.bits.empty() && !c.instance.existentials.empty())
    throw Bail{kExitExternal, "engine reported TRUE without a certificate; "
                              "cannot lift definitions"};

  std::vector<dqsynth::FunctionDefinition> defs = times.run("lift", [&] {
    return dqsynth::lift_solution(c.original, c.instance, outcome.solution,
                                  c.trace);
  });
  dqsynth::LiftedVerify verdict = times.run(
      "verify", [&] { return dqsynth::verify_lifted(c.original, defs); });
  if (!verdict.valid)
    throw Bail{kExitError,
               "internal error: lifted definitions failed verification"};

  std::string printed = dqsynth::emit_definitions(defs);
  if (opts.emit_json) {
    record["verdict"] = "realizable";
    if (!opts.output_path.empty())
      write_output(opts, printed);
    else
      record["definitions"] = printed;
    emit_record(record, times);
  } else {
    write_output(opts, printed);
  }
  return kExitOk;
}

int cmd_compile(const std::string &path, Options &opts) {
  StageTimes times;
  std::string text = read_file(path);
  Compiled c = compile_frontend(text, opts, times);
  std::string out =
      times.run("emit", [&] { return dqsynth::write_dqdimacs(c.instance); });
  if (opts.emit_json) {
    json record = base_record(times);
    record["verdict"] = nullptr;
    record["n_vars"] = c.instance.num_vars;
    record["n_clauses"] = c.instance.clauses.size();
    record["n_functions"] = c.original.functions.size();
    record["callsign_class"] =
        c.index.single_callsign ? "single" : "multiple";
    write_output(opts, out);
    emit_record(record, times);
  } else {
    write_output(opts, out);
  }
  return kExitOk;
}

int cmd_convert(const std::string &path, Options &opts) {
  StageTimes times;
  std::string text = read_file(path);
  dqsynth::DqbfInstance instance =
      times.run("parse", [&] { return dqsynth::parse_qdimacs(text); });
  dqsynth::SynthProblem problem =
      times.run("convert", [&] { return dqsynth::qbf_to_sygus(instance); });
  std::string out =
      times.run("emit", [&] { return dqsynth::print_problem(problem); });
  if (opts.emit_json) {
    json record = base_record(times);
    record["n_vars"] = instance.num_vars;
    record["n_clauses"] = instance.clauses.size();
    record["n_functions"] = problem.functions.size();
    record["callsign_class"] = "single";
    write_output(opts, out);
    emit_record(record, times);
  } else {
    write_output(opts, out);
  }
  return kExitOk;
}

int cmd_solve(const std::string &path, Options &opts) {
  StageTimes times;
  std::string text = read_file(path);
  dqsynth::DqbfInstance instance =
      times.run("parse", [&] { return dqsynth::parse_qdimacs(text); });
  opts.check_deadline("solving");
  dqsynth::SolveOutcome outcome =
      times.run("solve", [&] { return run_engine(opts, instance); });

  json record = base_record(times);
  record["n_vars"] = instance.num_vars;
  record["n_clauses"] = instance.clauses.size();

  if (outcome.verdict == Verdict::ResourceLimit) {
    if (opts.emit_json) {
      record["verdict"] = "UNKNOWN";
      emit_record(record, times);
    }
    std::cerr << "resource limit: " << outcome.limit_reason << "\n";
    return kExitResourceLimit;
  }

  bool is_true = outcome.verdict == Verdict::True;
  std::string certificate;
  if (is_true && opts.print_certificate) {
    if (outcome.solution.bits.empty() && !instance.existentials.empty())
      throw Bail{kExitExternal, "engine reported TRUE without a certificate"};
    auto check = dqsynth::verify_solution(instance, outcome.solution);
    if (!check.valid)
      throw Bail{kExitError, "internal error: certificate failed "
                             "verification"};
    certificate = dqsynth::write_certificate(outcome.solution);
  }

  if (opts.emit_json) {
    record["verdict"] = is_true ? "TRUE" : "FALSE";
    if (!certificate.empty())
      record["certificate"] = certificate;
    emit_record(record, times);
  } else {
    std::ostringstream out;
    out << (is_true ? "TRUE" : "FALSE") << "\n";
    out << certificate;
    write_output(opts, out.str());
  }
  return is_true ? kExitOk : kExitNegative;
}

int cmd_verify(const std::string &spec_path, const std::string &defs_path,
               Options &opts) {
  StageTimes times;
  std::string spec_text = read_file(spec_path);
  std::string defs_text = read_file(defs_path);
  auto [problem, defs] = times.run("parse", [&] {
    return std::make_pair(dqsynth::parse_problem(spec_text),
                          dqsynth::parse_definitions(defs_text));
  });
  dqsynth::LiftedVerify verdict = times.run(
      "verify", [&] { return dqsynth::verify_lifted(problem, defs); });

  std::ostringstream out;
  if (verdict.valid) {
    out << "VALID\n";
  } else {
    out << "INVALID\n";
    for (const auto &[name, value] : verdict.counterexample)
      out << name << " = " << dqsynth::print_term(dqsynth::mk_const(value))
          << "\n";
  }
  if (opts.emit_json) {
    json record = base_record(times);
    record["verdict"] = verdict.valid ? "VALID" : "INVALID";
    if (!verdict.valid) {
      json cex;
      for (const auto &[name, value] : verdict.counterexample)
        cex[name] = dqsynth::print_term(dqsynth::mk_const(value));
      record["counterexample"] = cex;
    }
    emit_record(record, times);
  } else {
    write_output(opts, out.str());
  }
  return verdict.valid ? kExitOk : kExitNegative;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"theory-constrained bitvector synthesis via DQBF"};
  app.require_subcommand(1);
  // Global flags remain usable after the subcommand name.
  app.fallthrough();

  Options opts;
  app.add_option("--engine", opts.engine,
                 "expansion | 2qbf | auto | external:<command>")
      ->capture_default_str();
  app.add_option("--expansion-bound", opts.expansion_bound,
                 "max universal bits the expansion engine accepts")
      ->capture_default_str();
  app.add_option("--timeout", opts.timeout_seconds,
                 "wall-clock budget in seconds (0 = none)");
  app.add_option("--seed", opts.seed,
                 "reserved for randomized strategies; the built-in engines "
                 "are deterministic");
  app.add_flag("--json", opts.emit_json,
               "print a machine-readable result record on stdout");
  app.add_flag("--dump-callsigns", opts.dump_callsigns,
               "print the signature index to stderr");
  app.add_flag("--dump-ackermann", opts.dump_ackermann,
               "print the single-signature rewrite trace to stderr");
  app.add_flag("--dump-dqf", opts.dump_dqf,
               "print the quantified formula to stderr");
  app.add_option("-o,--output", opts.output_path, "write output to this file");

  std::string input;
  std::string defs_path;

  CLI::App *synth = app.add_subcommand(
      "synth", "synthesize definitions from a SyGuS problem");
  synth->add_option("file", input, "problem file")->required();

  CLI::App *compile = app.add_subcommand(
      "compile", "lower a SyGuS problem to a DQDIMACS instance");
  compile->add_option("file", input, "problem file")->required();

  CLI::App *convert = app.add_subcommand(
      "convert", "re-express a QDIMACS/DQDIMACS instance as a SyGuS problem");
  convert->add_option("file", input, "instance file")->required();

  CLI::App *solve =
      app.add_subcommand("solve", "decide a QDIMACS/DQDIMACS instance");
  solve->add_option("file", input, "instance file")->required();
  solve->add_flag("--certificate", opts.print_certificate,
                  "print the model functions after TRUE");

  CLI::App *verify = app.add_subcommand(
      "verify", "check define-funs against a SyGuS problem");
  verify->add_option("spec", input, "problem file")->required();
  verify->add_option("defs", defs_path, "define-fun file")->required();

  CLI11_PARSE(app, argc, argv);
  opts.started = std::chrono::steady_clock::now();

  try {
    if (synth->parsed())
      return cmd_synth(input, opts);
    if (compile->parsed())
      return cmd_compile(input, opts);
    if (convert->parsed())
      return cmd_convert(input, opts);
    if (solve->parsed())
      return cmd_solve(input, opts);
    if (verify->parsed())
      return cmd_verify(input, defs_path, opts);
    std::cerr << "no subcommand\n";
    return kExitParse;
  } catch (const Bail &b) {
    std::cerr << b.message << "\n";
    return b.code;
  } catch (const dqsynth::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dqsynth::DimacsError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
