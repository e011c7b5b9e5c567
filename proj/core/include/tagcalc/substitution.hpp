// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <string>

#include "tagcalc/syntax.hpp"

namespace tagcalc {

/// [x := s]t over terms. Shadowing, not alpha-renaming: Lam/Let skip their
/// body when the binder equals x; a Match whose binder equals x substitutes
/// into the scrutinee and the miss branch but not the hit branch. Only
/// variable names at term position are replaced; names in tag positions and
/// in type annotations stay untouched. Evaluation only ever substitutes
/// closed values, so capture cannot arise.
TmRef subst_tm(const std::string& x, const TmRef& s, const TmRef& t);

/// [n := e] inside the name positions of a type: Tagged names, TagExt
/// parents and nested Fst/Unfold spines. Prod/Sum binders shadow in their
/// second component. Only defined for names; callers enforce the name
/// restriction on general expressions.
TyRef subst_name_ty(const NameRef& e, const std::string& x, const TyRef& t);

/// Name-into-name substitution used by subst_name_ty.
NameRef subst_name_name(const NameRef& e, const std::string& x, const NameRef& n);

/// [t := u] over type variables; mu(t) shadows.
TyRef subst_tyvar(const std::string& t, const TyRef& u, const TyRef& ty);

}  // namespace tagcalc
