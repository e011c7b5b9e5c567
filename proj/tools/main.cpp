// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tagcalc/dynamics.hpp"
#include "tagcalc/parser.hpp"
#include "tagcalc/pretty.hpp"
#include "tagcalc/soundness.hpp"
#include "tagcalc/typing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStaticError = 1;  // parse or type error
constexpr int kExitStuck = 2;
constexpr int kExitOutOfFuel = 3;
constexpr int kExitSelftestFailure = 4;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

struct LoadedProgram {
  tagcalc::ProgramFile file;
  tagcalc::TagCtx sigma;
  tagcalc::Store store;
};

int load(const std::string& path, LoadedProgram& out) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << '\n';
    return kExitStaticError;
  }
  auto parsed = tagcalc::parse_program(text);
  if (std::holds_alternative<tagcalc::ParseError>(parsed)) {
    std::cerr << tagcalc::render(std::get<tagcalc::ParseError>(parsed)) << '\n';
    return kExitStaticError;
  }
  out.file = std::get<tagcalc::ProgramFile>(parsed);
  if (auto err = tagcalc::induced_contexts(out.file, out.sigma, out.store)) {
    std::cerr << "error: " << *err << '\n';
    return kExitStaticError;
  }
  return kExitOk;
}

void print_declarations(const tagcalc::ProgramFile& file) {
  for (const tagcalc::TagDecl& d : file.declarations) {
    std::cout << "tag #" << d.id.value << " : " << tagcalc::pretty(d.body);
    if (d.parent) std::cout << " extends #" << d.parent->value;
    std::cout << '\n';
  }
}

int run_parse(const std::string& path) {
  LoadedProgram program;
  if (int rc = load(path, program); rc != kExitOk) return rc;
  print_declarations(program.file);
  std::cout << tagcalc::pretty(program.file.main) << '\n';
  return kExitOk;
}

int run_typecheck(const std::string& path) {
  LoadedProgram program;
  if (int rc = load(path, program); rc != kExitOk) return rc;
  tagcalc::TypeResult result =
      tagcalc::synthesize(tagcalc::TypingCtx{}, program.sigma, program.file.main);
  if (!result.ok()) {
    std::cerr << tagcalc::render(result.error()) << '\n';
    return kExitStaticError;
  }
  std::cout << tagcalc::pretty(result.type()) << '\n';
  return kExitOk;
}

int run_eval(const std::string& path, bool trace, std::size_t fuel, bool json) {
  LoadedProgram program;
  if (int rc = load(path, program); rc != kExitOk) return rc;
  tagcalc::TypeResult type =
      tagcalc::synthesize(tagcalc::TypingCtx{}, program.sigma, program.file.main);
  if (!type.ok()) {
    std::cerr << tagcalc::render(type.error()) << '\n';
    return kExitStaticError;
  }
  tagcalc::EvalResult result = tagcalc::evaluate(program.store, program.file.main, fuel);
  int rc = kExitOk;
  const char* status = "value";
  if (result.status == tagcalc::EvalResult::Status::Stuck) {
    rc = kExitStuck;
    status = "stuck";
  } else if (result.status == tagcalc::EvalResult::Status::OutOfFuel) {
    rc = kExitOutOfFuel;
    status = "out_of_fuel";
  }
  if (json) {
    nlohmann::ordered_json out;
    out["status"] = status;
    out["steps"] = result.trace.size();
    out["type"] = tagcalc::pretty(type.type());
    out["term"] = tagcalc::pretty(result.term);
    out["store"] = tagcalc::store_dump(result.store);
    std::cout << out.dump(2) << '\n';
    return rc;
  }
  if (trace) std::cout << tagcalc::render_trace(program.file.main, program.store, result);
  if (result.status == tagcalc::EvalResult::Status::Stuck) {
    std::cout << "stuck: " << result.stuck_reason << '\n';
  } else if (result.status == tagcalc::EvalResult::Status::OutOfFuel) {
    std::cout << "out of fuel after " << result.trace.size() << " steps\n";
  }
  std::cout << tagcalc::pretty(result.term) << '\n';
  std::cout << tagcalc::store_dump(result.store);
  return rc;
}

int run_selftest_command(std::size_t cases, std::uint64_t seed) {
  tagcalc::SelftestOptions options;
  options.cases = cases;
  options.seed = seed;
  tagcalc::SelftestReport report = tagcalc::run_selftest(options);
  std::cout << report.human;
  return report.pass ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tagcalc: typechecker and small-step evaluator for a calculus of "
               "dynamically generated, hierarchically tagged values"};
  app.require_subcommand(1);

  std::string path;
  bool trace = false;
  bool json = false;
  std::size_t fuel = 10000;
  std::size_t cases = 1000;
  std::uint64_t seed = 0;

  CLI::App* parse = app.add_subcommand("parse", "parse a program and print it back");
  parse->add_option("file", path, "program file")->required();

  CLI::App* typecheck = app.add_subcommand("typecheck", "synthesize the program's type");
  typecheck->add_option("file", path, "program file")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate the program");
  eval->add_option("file", path, "program file")->required();
  eval->add_flag("--trace", trace, "print the reduction trace");
  eval->add_option("--fuel", fuel, "maximum number of steps")->capture_default_str();
  eval->add_flag("--json", json, "machine-readable result");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the differential and soundness suites");
  selftest->add_option("--cases", cases, "generated cases per suite")->capture_default_str();
  selftest->add_option("--seed", seed, "base seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (parse->parsed()) return run_parse(path);
  if (typecheck->parsed()) return run_typecheck(path);
  if (eval->parsed()) return run_eval(path, trace, fuel, json);
  if (selftest->parsed()) return run_selftest_command(cases, seed);
  return kExitStaticError;
}
