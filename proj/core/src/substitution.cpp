// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/substitution.hpp"

namespace tagcalc {

TmRef subst_tm(const std::string& x, const TmRef& s, const TmRef& t) {
  const Tm& e = *t;
  switch (e.kind) {
    case Tm::Kind::NewTag:
    case Tm::Kind::SubTag:
    case Tm::Kind::RNil:
    case Tm::Kind::Unit:
      return t;
    case Tm::Kind::Name:
      if (e.name->kind == Name::Kind::Var && e.name->ident == x) return s;
      return t;
    case Tm::Kind::New:
      return tm_new(e.name, subst_tm(x, s, e.a));
    case Tm::Kind::Match:
      if (e.ident == x) {
        // Binder shadows the hit branch only; the scrutinee and the miss
        // branch are outside its scope.
        return tm_match(subst_tm(x, s, e.a), e.name, e.ident, e.b, subst_tm(x, s, e.c));
      }
      return tm_match(subst_tm(x, s, e.a), e.name, e.ident, subst_tm(x, s, e.b),
                      subst_tm(x, s, e.c));
    case Tm::Kind::Extract:
      return tm_extract(subst_tm(x, s, e.a));
    case Tm::Kind::Lam:
      if (e.ident == x) return t;
      return tm_lam(e.ident, e.type, subst_tm(x, s, e.a));
    case Tm::Kind::App:
      return tm_app(subst_tm(x, s, e.a), subst_tm(x, s, e.b));
    case Tm::Kind::RCons:
      return tm_rcons(e.ident, subst_tm(x, s, e.a), subst_tm(x, s, e.b));
    case Tm::Kind::Proj:
      return tm_proj(subst_tm(x, s, e.a), e.ident);
    case Tm::Kind::Let:
      if (e.ident == x) return tm_let(e.ident, subst_tm(x, s, e.a), e.b);
      return tm_let(e.ident, subst_tm(x, s, e.a), subst_tm(x, s, e.b));
    case Tm::Kind::Fix:
      return tm_fix(subst_tm(x, s, e.a));
    case Tm::Kind::Fold:
      return tm_fold(e.type, subst_tm(x, s, e.a));
    case Tm::Kind::Unfold:
      return tm_unfold(subst_tm(x, s, e.a));
    case Tm::Kind::Pair:
      return tm_pair(subst_tm(x, s, e.a), subst_tm(x, s, e.b));
    case Tm::Kind::Fst:
      return tm_fst(subst_tm(x, s, e.a));
    case Tm::Kind::Snd:
      return tm_snd(subst_tm(x, s, e.a));
  }
  return t;
}

NameRef subst_name_name(const NameRef& e, const std::string& x, const NameRef& n) {
  switch (n->kind) {
    case Name::Kind::Var:
      return n->ident == x ? e : n;
    case Name::Kind::Tag:
      return n;
    case Name::Kind::Fst:
      return name_fst(subst_name_name(e, x, n->inner));
    case Name::Kind::Unfold:
      return name_unfold(subst_name_name(e, x, n->inner));
  }
  return n;
}

TyRef subst_name_ty(const NameRef& e, const std::string& x, const TyRef& t) {
  const Ty& ty = *t;
  switch (ty.kind) {
    case Ty::Kind::Top:
    case Ty::Kind::Var:
    case Ty::Kind::RNil:
      return t;
    case Ty::Kind::Tag:
      return ty_tag(subst_name_ty(e, x, ty.a));
    case Ty::Kind::TagExt:
      return ty_tag_ext(subst_name_ty(e, x, ty.a), subst_name_name(e, x, ty.name));
    case Ty::Kind::Tagged:
      return ty_tagged(subst_name_name(e, x, ty.name));
    case Ty::Kind::Prod:
      if (ty.ident == x) return ty_prod(ty.ident, subst_name_ty(e, x, ty.a), ty.b);
      return ty_prod(ty.ident, subst_name_ty(e, x, ty.a), subst_name_ty(e, x, ty.b));
    case Ty::Kind::Sum:
      if (ty.ident == x) return ty_sum(ty.ident, subst_name_ty(e, x, ty.a), ty.b);
      return ty_sum(ty.ident, subst_name_ty(e, x, ty.a), subst_name_ty(e, x, ty.b));
    case Ty::Kind::RCons:
      return ty_rcons(ty.ident, subst_name_ty(e, x, ty.a), subst_name_ty(e, x, ty.b));
    case Ty::Kind::Mu:
      return ty_mu(ty.ident, subst_name_ty(e, x, ty.a));
  }
  return t;
}

TyRef subst_tyvar(const std::string& t, const TyRef& u, const TyRef& ty) {
  const Ty& target = *ty;
  switch (target.kind) {
    case Ty::Kind::Top:
    case Ty::Kind::RNil:
    case Ty::Kind::Tagged:
      return ty;
    case Ty::Kind::Var:
      return target.ident == t ? u : ty;
    case Ty::Kind::Tag:
      return ty_tag(subst_tyvar(t, u, target.a));
    case Ty::Kind::TagExt:
      return ty_tag_ext(subst_tyvar(t, u, target.a), target.name);
    case Ty::Kind::Prod:
      return ty_prod(target.ident, subst_tyvar(t, u, target.a), subst_tyvar(t, u, target.b));
    case Ty::Kind::Sum:
      return ty_sum(target.ident, subst_tyvar(t, u, target.a), subst_tyvar(t, u, target.b));
    case Ty::Kind::RCons:
      return ty_rcons(target.ident, subst_tyvar(t, u, target.a), subst_tyvar(t, u, target.b));
    case Ty::Kind::Mu:
      if (target.ident == t) return ty;
      return ty_mu(target.ident, subst_tyvar(t, u, target.a));
  }
  return ty;
}

}  // namespace tagcalc
