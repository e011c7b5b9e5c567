// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/syntax.hpp"

#include <utility>

namespace tagcalc {

NameRef name_var(std::string ident) {
  return std::make_shared<Name>(Name{Name::Kind::Var, std::move(ident), TagId{}, nullptr});
}

NameRef name_tag(TagId id) {
  return std::make_shared<Name>(Name{Name::Kind::Tag, {}, id, nullptr});
}

NameRef name_fst(NameRef inner) {
  return std::make_shared<Name>(Name{Name::Kind::Fst, {}, TagId{}, std::move(inner)});
}

NameRef name_unfold(NameRef inner) {
  return std::make_shared<Name>(Name{Name::Kind::Unfold, {}, TagId{}, std::move(inner)});
}

static TyRef make_ty(Ty::Kind k, std::string ident, TyRef a, TyRef b, NameRef n) {
  return std::make_shared<Ty>(Ty{k, std::move(ident), std::move(a), std::move(b), std::move(n)});
}

TyRef ty_top() {
  static const TyRef top = make_ty(Ty::Kind::Top, {}, nullptr, nullptr, nullptr);
  return top;
}

TyRef ty_var(std::string ident) {
  return make_ty(Ty::Kind::Var, std::move(ident), nullptr, nullptr, nullptr);
}

TyRef ty_tag(TyRef body) {
  return make_ty(Ty::Kind::Tag, {}, std::move(body), nullptr, nullptr);
}

TyRef ty_tag_ext(TyRef body, NameRef parent) {
  return make_ty(Ty::Kind::TagExt, {}, std::move(body), nullptr, std::move(parent));
}

TyRef ty_tagged(NameRef n) {
  return make_ty(Ty::Kind::Tagged, {}, nullptr, nullptr, std::move(n));
}

TyRef ty_prod(std::string binder, TyRef dom, TyRef cod) {
  return make_ty(Ty::Kind::Prod, std::move(binder), std::move(dom), std::move(cod), nullptr);
}

TyRef ty_sum(std::string binder, TyRef first, TyRef second) {
  return make_ty(Ty::Kind::Sum, std::move(binder), std::move(first), std::move(second), nullptr);
}

TyRef ty_rnil() {
  static const TyRef rnil = make_ty(Ty::Kind::RNil, {}, nullptr, nullptr, nullptr);
  return rnil;
}

TyRef ty_rcons(std::string label, TyRef head, TyRef tail) {
  return make_ty(Ty::Kind::RCons, std::move(label), std::move(head), std::move(tail), nullptr);
}

TyRef ty_mu(std::string binder, TyRef body) {
  return make_ty(Ty::Kind::Mu, std::move(binder), std::move(body), nullptr, nullptr);
}

static TmRef make_tm(Tm::Kind k, std::string ident, TyRef ty, NameRef n, TmRef a, TmRef b,
                     TmRef c) {
  return std::make_shared<Tm>(Tm{k, std::move(ident), std::move(ty), std::move(n), std::move(a),
                                 std::move(b), std::move(c)});
}

TmRef tm_newtag(TyRef body) {
  return make_tm(Tm::Kind::NewTag, {}, std::move(body), nullptr, nullptr, nullptr, nullptr);
}

TmRef tm_subtag(TyRef body, NameRef parent) {
  return make_tm(Tm::Kind::SubTag, {}, std::move(body), std::move(parent), nullptr, nullptr,
                 nullptr);
}

TmRef tm_new(NameRef tag, TmRef payload) {
  return make_tm(Tm::Kind::New, {}, nullptr, std::move(tag), std::move(payload), nullptr, nullptr);
}

TmRef tm_match(TmRef scrutinee, NameRef tag, std::string binder, TmRef hit, TmRef miss) {
  return make_tm(Tm::Kind::Match, std::move(binder), nullptr, std::move(tag), std::move(scrutinee),
                 std::move(hit), std::move(miss));
}

TmRef tm_extract(TmRef e) {
  return make_tm(Tm::Kind::Extract, {}, nullptr, nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_lam(std::string binder, TyRef dom, TmRef body) {
  return make_tm(Tm::Kind::Lam, std::move(binder), std::move(dom), nullptr, std::move(body),
                 nullptr, nullptr);
}

TmRef tm_app(TmRef fn, TmRef arg) {
  return make_tm(Tm::Kind::App, {}, nullptr, nullptr, std::move(fn), std::move(arg), nullptr);
}

TmRef tm_rnil() {
  static const TmRef rnil = make_tm(Tm::Kind::RNil, {}, nullptr, nullptr, nullptr, nullptr, nullptr);
  return rnil;
}

TmRef tm_rcons(std::string label, TmRef head, TmRef tail) {
  return make_tm(Tm::Kind::RCons, std::move(label), nullptr, nullptr, std::move(head),
                 std::move(tail), nullptr);
}

TmRef tm_proj(TmRef e, std::string label) {
  return make_tm(Tm::Kind::Proj, std::move(label), nullptr, nullptr, std::move(e), nullptr,
                 nullptr);
}

TmRef tm_let(std::string binder, TmRef bound, TmRef body) {
  return make_tm(Tm::Kind::Let, std::move(binder), nullptr, nullptr, std::move(bound),
                 std::move(body), nullptr);
}

TmRef tm_fix(TmRef e) {
  return make_tm(Tm::Kind::Fix, {}, nullptr, nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_fold(TyRef annot, TmRef e) {
  return make_tm(Tm::Kind::Fold, {}, std::move(annot), nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_unfold(TmRef e) {
  return make_tm(Tm::Kind::Unfold, {}, nullptr, nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_pair(TmRef left, TmRef right) {
  return make_tm(Tm::Kind::Pair, {}, nullptr, nullptr, std::move(left), std::move(right), nullptr);
}

TmRef tm_fst(TmRef e) {
  return make_tm(Tm::Kind::Fst, {}, nullptr, nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_snd(TmRef e) {
  return make_tm(Tm::Kind::Snd, {}, nullptr, nullptr, std::move(e), nullptr, nullptr);
}

TmRef tm_unit() {
  static const TmRef unit = make_tm(Tm::Kind::Unit, {}, nullptr, nullptr, nullptr, nullptr, nullptr);
  return unit;
}

TmRef tm_name(NameRef n) {
  return make_tm(Tm::Kind::Name, {}, nullptr, std::move(n), nullptr, nullptr, nullptr);
}

TmRef tm_letrec(const std::string& binder, TyRef annot, TmRef bound, TmRef body) {
  return tm_let(binder, tm_fix(tm_lam(binder, std::move(annot), std::move(bound))),
                std::move(body));
}

bool equal(const Name& a, const Name& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Name::Kind::Var: return a.ident == b.ident;
    case Name::Kind::Tag: return a.tag == b.tag;
    case Name::Kind::Fst:
    case Name::Kind::Unfold: return equal(a.inner, b.inner);
  }
  return false;
}

bool equal(const Ty& a, const Ty& b) {
  if (a.kind != b.kind) return false;
  return a.ident == b.ident && equal(a.a, b.a) && equal(a.b, b.b) && equal(a.name, b.name);
}

bool equal(const Tm& a, const Tm& b) {
  if (a.kind != b.kind) return false;
  return a.ident == b.ident && equal(a.type, b.type) && equal(a.name, b.name) &&
         equal(a.a, b.a) && equal(a.b, b.b) && equal(a.c, b.c);
}

bool equal(const NameRef& a, const NameRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool equal(const TyRef& a, const TyRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool equal(const TmRef& a, const TmRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

bool record_ty(const Ty& t) {
  return t.kind == Ty::Kind::RNil || t.kind == Ty::Kind::RCons;
}

bool record_tm(const Tm& e) {
  return e.kind == Tm::Kind::RNil || e.kind == Tm::Kind::RCons;
}

// Walks one record spine checking shape and label distinctness, recursing
// into field types through the full wellformedness check.
static bool wellformed_spine(const Ty& t, std::set<std::string>& seen) {
  if (t.kind == Ty::Kind::RNil) return true;
  if (t.kind != Ty::Kind::RCons) return false;
  if (!seen.insert(t.ident).second) return false;
  if (!wellformed_ty(*t.a)) return false;
  if (!record_ty(*t.b)) return false;
  return wellformed_spine(*t.b, seen);
}

bool wellformed_ty(const Ty& t) {
  switch (t.kind) {
    case Ty::Kind::Top:
    case Ty::Kind::Var:
    case Ty::Kind::Tagged:
    case Ty::Kind::RNil:
      return true;
    case Ty::Kind::Tag:
    case Ty::Kind::TagExt:
    case Ty::Kind::Mu:
      return wellformed_ty(*t.a);
    case Ty::Kind::Prod:
    case Ty::Kind::Sum:
      return wellformed_ty(*t.a) && wellformed_ty(*t.b);
    case Ty::Kind::RCons: {
      std::set<std::string> seen;
      return wellformed_spine(t, seen);
    }
  }
  return false;
}

std::optional<TyRef> ty_lookup(const std::string& label, const Ty& record) {
  const Ty* cur = &record;
  while (cur->kind == Ty::Kind::RCons) {
    if (cur->ident == label) return cur->a;
    cur = cur->b.get();
  }
  return std::nullopt;
}

std::optional<TmRef> tm_lookup(const std::string& label, const Tm& record) {
  const Tm* cur = &record;
  while (cur->kind == Tm::Kind::RCons) {
    if (cur->ident == label) return cur->a;
    cur = cur->b.get();
  }
  return std::nullopt;
}

static void fv_name(const Name& n, std::set<std::string>& out) {
  switch (n.kind) {
    case Name::Kind::Var: out.insert(n.ident); break;
    case Name::Kind::Tag: break;
    case Name::Kind::Fst:
    case Name::Kind::Unfold: fv_name(*n.inner, out); break;
  }
}

static void fv_ty(const Ty& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Ty::Kind::Top:
    case Ty::Kind::RNil:
      break;
    case Ty::Kind::Var:
      out.insert(t.ident);
      break;
    case Ty::Kind::Tag:
      fv_ty(*t.a, out);
      break;
    case Ty::Kind::TagExt:
      fv_ty(*t.a, out);
      fv_name(*t.name, out);
      break;
    case Ty::Kind::Tagged:
      fv_name(*t.name, out);
      break;
    case Ty::Kind::Prod:
    case Ty::Kind::Sum: {
      fv_ty(*t.a, out);
      std::set<std::string> second;
      fv_ty(*t.b, second);
      second.erase(t.ident);
      out.insert(second.begin(), second.end());
      break;
    }
    case Ty::Kind::RCons:
      fv_ty(*t.a, out);
      fv_ty(*t.b, out);
      break;
    case Ty::Kind::Mu: {
      std::set<std::string> body;
      fv_ty(*t.a, body);
      body.erase(t.ident);
      out.insert(body.begin(), body.end());
      break;
    }
  }
}

static void fv_tm(const Tm& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Tm::Kind::Unit:
    case Tm::Kind::RNil:
      break;
    case Tm::Kind::Name:
      fv_name(*e.name, out);
      break;
    case Tm::Kind::NewTag:
      fv_ty(*e.type, out);
      break;
    case Tm::Kind::SubTag:
      fv_ty(*e.type, out);
      fv_name(*e.name, out);
      break;
    case Tm::Kind::New:
      fv_name(*e.name, out);
      fv_tm(*e.a, out);
      break;
    case Tm::Kind::Match: {
      fv_tm(*e.a, out);
      fv_name(*e.name, out);
      std::set<std::string> hit;
      fv_tm(*e.b, hit);
      hit.erase(e.ident);
      out.insert(hit.begin(), hit.end());
      fv_tm(*e.c, out);
      break;
    }
    case Tm::Kind::Lam: {
      fv_ty(*e.type, out);
      std::set<std::string> body;
      fv_tm(*e.a, body);
      body.erase(e.ident);
      out.insert(body.begin(), body.end());
      break;
    }
    case Tm::Kind::Let: {
      fv_tm(*e.a, out);
      std::set<std::string> body;
      fv_tm(*e.b, body);
      body.erase(e.ident);
      out.insert(body.begin(), body.end());
      break;
    }
    case Tm::Kind::Fold:
      fv_ty(*e.type, out);
      fv_tm(*e.a, out);
      break;
    case Tm::Kind::App:
    case Tm::Kind::RCons:
    case Tm::Kind::Pair:
      fv_tm(*e.a, out);
      fv_tm(*e.b, out);
      break;
    case Tm::Kind::Extract:
    case Tm::Kind::Proj:
    case Tm::Kind::Fix:
    case Tm::Kind::Unfold:
    case Tm::Kind::Fst:
    case Tm::Kind::Snd:
      fv_tm(*e.a, out);
      break;
  }
}

std::set<std::string> free_vars(const Tm& e) {
  std::set<std::string> out;
  fv_tm(e, out);
  return out;
}

std::set<std::string> free_vars_ty(const Ty& t) {
  std::set<std::string> out;
  fv_ty(t, out);
  return out;
}

std::set<std::string> free_vars_name(const Name& n) {
  std::set<std::string> out;
  fv_name(n, out);
  return out;
}

std::size_t tm_size(const Tm& e) {
  std::size_t n = 1;
  if (e.a) n += tm_size(*e.a);
  if (e.b) n += tm_size(*e.b);
  if (e.c) n += tm_size(*e.c);
  return n;
}

}  // namespace tagcalc
