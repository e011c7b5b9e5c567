// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "tagcalc/substitution.hpp"
#include "tagcalc/syntax.hpp"

using namespace tagcalc;

TEST_CASE("subst_tm replaces variable names at term position") {
  CHECK(equal(subst_tm("x", tm_unit(), tm_name(name_var("x"))), tm_unit()));
  CHECK(equal(subst_tm("x", tm_unit(), tm_name(name_var("y"))), tm_name(name_var("y"))));
  // Non-variable names stay.
  CHECK(equal(subst_tm("x", tm_unit(), tm_name(name_fst(name_var("x")))),
              tm_name(name_fst(name_var("x")))));
}

TEST_CASE("subst_tm shadows under lambda and let") {
  TmRef lam = tm_lam("x", ty_top(), tm_name(name_var("x")));
  CHECK(equal(subst_tm("x", tm_unit(), lam), lam));
  TmRef open_lam = tm_lam("y", ty_top(), tm_name(name_var("x")));
  CHECK(equal(subst_tm("x", tm_unit(), open_lam), tm_lam("y", ty_top(), tm_unit())));
  // Let: the bound term is outside the binder's scope.
  TmRef let = tm_let("x", tm_name(name_var("x")), tm_name(name_var("x")));
  CHECK(equal(subst_tm("x", tm_unit(), let), tm_let("x", tm_unit(), tm_name(name_var("x")))));
}

TEST_CASE("shadowed Match substitutes scrutinee and miss branch, not hit") {
  TmRef match = tm_match(tm_name(name_var("x")), name_var("n"), "x", tm_name(name_var("x")),
                         tm_name(name_var("x")));
  TmRef expected =
      tm_match(tm_unit(), name_var("n"), "x", tm_name(name_var("x")), tm_unit());
  CHECK(equal(subst_tm("x", tm_unit(), match), expected));
}

TEST_CASE("subst_tm is identity on terms without the variable") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1200; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    if (free_vars(*e).count("q") != 0) continue;
    CHECK(equal(subst_tm("q", tm_unit(), e), e));
  }
}

namespace {

std::size_t count_var_occurrences(const std::string& x, const Tm& e) {
  std::size_t n = 0;
  if (e.kind == Tm::Kind::Name && e.name->kind == Name::Kind::Var && e.name->ident == x) {
    return 1;
  }
  // Count only occurrences the substitution will touch.
  if (e.kind == Tm::Kind::Lam && e.ident == x) return 0;
  if (e.kind == Tm::Kind::Let && e.ident == x) return count_var_occurrences(x, *e.a);
  if (e.kind == Tm::Kind::Match && e.ident == x) {
    return count_var_occurrences(x, *e.a) + count_var_occurrences(x, *e.c);
  }
  if (e.a) n += count_var_occurrences(x, *e.a);
  if (e.b) n += count_var_occurrences(x, *e.b);
  if (e.c) n += count_var_occurrences(x, *e.c);
  return n;
}

}  // namespace

TEST_CASE("each occurrence is replaced by exactly one copy of the substitute") {
  std::mt19937_64 rng(5);
  TmRef s = tm_pair(tm_unit(), tm_unit());
  std::size_t s_size = tm_size(*s);
  for (int i = 0; i < 1000; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    std::size_t occurrences = count_var_occurrences("x", *e);
    TmRef out = subst_tm("x", s, e);
    CHECK(tm_size(*out) == tm_size(*e) + occurrences * (s_size - 1));
  }
}

TEST_CASE("subst_name_ty substitutes into name positions with binder shadowing") {
  CHECK(equal(subst_name_ty(name_tag(TagId{0}), "x", ty_tagged(name_var("x"))),
              ty_tagged(name_tag(TagId{0}))));
  CHECK(equal(subst_name_ty(name_tag(TagId{0}), "x", ty_top()), ty_top()));
  TyRef sum = ty_sum("x", ty_tagged(name_var("x")), ty_tagged(name_var("x")));
  TyRef expected = ty_sum("x", ty_tagged(name_var("z")), ty_tagged(name_var("x")));
  CHECK(equal(subst_name_ty(name_var("z"), "x", sum), expected));
}

TEST_CASE("subst_name_ty reaches nested name spines and tag parents") {
  TyRef t = ty_tag_ext(ty_tagged(name_var("x")), name_fst(name_var("x")));
  TyRef expected = ty_tag_ext(ty_tagged(name_tag(TagId{3})), name_fst(name_tag(TagId{3})));
  CHECK(equal(subst_name_ty(name_tag(TagId{3}), "x", t), expected));
}

TEST_CASE("identity name substitution is the identity") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 800; ++i) {
    TyRef t = testgen::gen_ty(rng, 4);
    CHECK(equal(subst_name_ty(name_var("x"), "x", t), t));
  }
}

TEST_CASE("subst_tyvar replaces type variables and mu shadows") {
  CHECK(equal(subst_tyvar("t", ty_top(), ty_var("t")), ty_top()));
  TyRef mu = ty_mu("t", ty_var("t"));
  CHECK(equal(subst_tyvar("t", ty_top(), mu), mu));
  // One-level unrolling of mu t.{f:t}.
  TyRef body = ty_rcons("f", ty_var("t"), ty_rnil());
  TyRef rec = ty_mu("t", body);
  TyRef unrolled = subst_tyvar("t", rec, body);
  CHECK(equal(unrolled, ty_rcons("f", rec, ty_rnil())));
}

TEST_CASE("subst_tyvar with the variable itself is the identity") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 800; ++i) {
    TyRef t = testgen::gen_ty(rng, 4);
    CHECK(equal(subst_tyvar("t", ty_var("t"), t), t));
  }
}

TEST_CASE("free variables after substitution are bounded by the law") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 800; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    TmRef v = tm_new(name_tag(TagId{0}), tm_unit());  // closed under binders
    std::set<std::string> before = free_vars(*e);
    std::set<std::string> after = free_vars(*subst_tm("x", v, e));
    std::set<std::string> bound = before;
    bound.erase("x");
    for (const std::string& fv : free_vars(*v)) bound.insert(fv);
    for (const std::string& fv : after) {
      // Annotation names are untouched by design, so x may survive in types.
      if (fv == "x") continue;
      CHECK(bound.count(fv) == 1);
    }
  }
}
