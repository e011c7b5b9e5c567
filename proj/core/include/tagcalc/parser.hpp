// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tagcalc/contexts.hpp"
#include "tagcalc/syntax.hpp"
#include "tagcalc/tag_store.hpp"

namespace tagcalc {

/// A pre-declared tag: `tag #k : T` or `tag #k : T extends #j`. Parents must
/// be declared before their children.
struct TagDecl {
  TagId id;
  TyRef body;
  std::optional<TagId> parent;
};

struct ProgramFile {
  std::vector<TagDecl> declarations;
  TmRef main;
};

struct ParseError {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
  std::vector<std::string> expected;
};

std::string render(const ParseError& err);

std::variant<ProgramFile, ParseError> parse_program(std::string_view text);
std::variant<TmRef, ParseError> parse_term(std::string_view text);
std::variant<TyRef, ParseError> parse_type(std::string_view text);

/// Builds the TagCtx/Store pair a program's declarations induce. Returns an
/// error message for duplicate ids, undeclared parents or ill-formed bodies;
/// the result satisfies storecontext_check by construction.
std::optional<std::string> induced_contexts(const ProgramFile& program, TagCtx& sigma_out,
                                            Store& store_out);

}  // namespace tagcalc
