// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tagcalc/contexts.hpp"
#include "tagcalc/syntax.hpp"

namespace tagcalc {

/// One subtyping question: Delta | Gamma |-_Sigma lhs <: rhs.
struct SubtypeQuery {
  AmberEnv delta;
  TypingCtx gamma;
  TagCtx sigma;
  TyRef lhs;
  TyRef rhs;
};

/// The subsumption-free type of a name, which breaks the cycle between the
/// typing and subtyping relations: variables look up Gamma, tags look up
/// Sigma (yielding Tag[body] or Tag[body]Extends(parent)), Fst projects a
/// Sum's first component, Unfold unrolls a Mu. Absent when unbound or the
/// inner type has the wrong shape.
std::optional<TyRef> name_tag_type(const TypingCtx& gamma, const TagCtx& sigma, const Name& n);

/// The name followed by its supertag parents, ending at a root tag type or
/// an unresolvable name. Terminates on arbitrary contexts (a repeated name
/// stops the walk).
std::vector<NameRef> ancestor_chain(const TypingCtx& gamma, const TagCtx& sigma, const Name& n);

/// True iff the ancestor chains of n and n2 (inclusive) intersect; decides
/// the existence of a shared supertype within the Tagged fragment.
bool mutual_supertype(const TypingCtx& gamma, const TagCtx& sigma, const Name& n, const Name& n2);

/// Syntax-directed subtyping decision procedure. Reflexivity is structural
/// equality; transitivity is not a rule and must be admissible (the harness
/// checks it against the declarative oracle).
bool subtype_check(const SubtypeQuery& q);
bool subtype_check(const AmberEnv& delta, const TypingCtx& gamma, const TagCtx& sigma,
                   const Ty& lhs, const Ty& rhs);

/// Successful-derivation tree with the classical rule names, for explain
/// output. Present exactly when subtype_check succeeds.
struct SubtypeTrace {
  std::string rule;
  std::string conclusion;
  std::vector<SubtypeTrace> premises;
};

std::optional<SubtypeTrace> subtype_derivation(const SubtypeQuery& q);
std::string render(const SubtypeTrace& trace);

}  // namespace tagcalc
