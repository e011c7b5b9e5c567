// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tagcalc/contexts.hpp"
#include "tagcalc/syntax.hpp"

namespace tagcalc {

struct TypeError {
  enum class Kind {
    UnboundVariable,
    UnboundTag,
    NotAFunction,
    ArgumentNotAName,
    ArgumentTypeMismatch,
    NotATag,
    NotTagged,
    NoMutualSupertype,
    BranchTypesIncomparable,
    NotARecord,
    MissingField,
    NotASum,
    NotAMu,
    FoldAnnotationMismatch,
    IllFormedType,
    FirstComponentNotAName,
  };
  Kind kind;
  std::string detail;
  std::vector<std::size_t> path;  // root-to-node child indices
};

std::string to_string(TypeError::Kind kind);
/// "kind @ root.i.j: detail"
std::string render(const TypeError& err);

class TypeResult {
 public:
  TypeResult(TyRef ty) : v_(std::move(ty)) {}          // NOLINT(google-explicit-constructor)
  TypeResult(TypeError err) : v_(std::move(err)) {}    // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<TyRef>(v_); }
  const TyRef& type() const { return std::get<TyRef>(v_); }
  const TypeError& error() const { return std::get<TypeError>(v_); }

 private:
  std::variant<TyRef, TypeError> v_;
};

/// Synthesizes the subsumption-free principal type of e. Subsumption is
/// applied only at the checking positions: function arguments, New payloads,
/// SubTag bodies, Fold bodies and Match branch reconciliation.
TypeResult synthesize(const TypingCtx& gamma, const TagCtx& sigma, const TmRef& e);

/// Succeeds iff the synthesized type of e is a subtype of want.
std::optional<TypeError> check_against(const TypingCtx& gamma, const TagCtx& sigma,
                                       const TmRef& e, const TyRef& want);

/// Typing of the derived form: Let x be Fix{/x:T,e1} in e2.
TypeResult type_letrec(const TypingCtx& gamma, const TagCtx& sigma, const std::string& binder,
                       const TyRef& annot, const TmRef& bound, const TmRef& body);

}  // namespace tagcalc
