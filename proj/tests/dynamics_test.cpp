// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "tagcalc/dynamics.hpp"
#include "tagcalc/pretty.hpp"
#include "tagcalc/substitution.hpp"

using namespace tagcalc;

namespace {

Store chain_store() {
  Store s = store_extend_root(TagId{0}, Store{});
  return store_extend_child(TagId{1}, TagId{0}, s);
}

TmRef tag_term(std::uint64_t id) { return tm_name(name_tag(TagId{id})); }

}  // namespace

TEST_CASE("value judgment") {
  Store empty;
  Store s = store_extend_root(TagId{0}, Store{});
  CHECK(is_value(empty, *tm_unit()));
  CHECK(is_value(s, *tag_term(0)));
  CHECK_FALSE(is_value(empty, *tag_term(0)));  // tag not in store
  CHECK(is_value(empty, *tm_lam("x", ty_top(), tm_unit())));
  CHECK(is_value(empty, *tm_fold(ty_mu("t", ty_top()), tm_unit())));
  CHECK_FALSE(is_value(empty, *tm_fold(ty_mu("t", ty_top()), tm_newtag(ty_top()))));
  CHECK(is_value(empty, *tm_new(name_var("x"), tm_unit())));
  CHECK_FALSE(is_value(empty, *tm_new(name_var("x"), tm_newtag(ty_top()))));
  CHECK(is_value(empty, *tm_rnil()));
  CHECK(is_value(empty, *tm_rcons("f", tm_unit(), tm_rnil())));
  CHECK_FALSE(is_value(empty, *tm_rcons("f", tm_newtag(ty_top()), tm_rnil())));
  CHECK(is_value(empty, *tm_pair(tm_unit(), tm_unit())));
  CHECK_FALSE(is_value(empty, *tm_app(tm_lam("x", ty_top(), tm_unit()), tm_unit())));
}

TEST_CASE("tag allocation steps") {
  StepResult r = step(Store{}, tm_newtag(ty_top()));
  REQUIRE(r.status == StepResult::Status::Stepped);
  CHECK(r.rule == "r_cls");
  CHECK(equal(r.term, tag_term(0)));
  REQUIRE(r.store.entries().size() == 1);
  CHECK(r.store.entries()[0].tags == std::vector<TagId>{TagId{0}});
  REQUIRE(r.alloc.has_value());
  CHECK(r.alloc->id == TagId{0});
  CHECK_FALSE(r.alloc->parent.has_value());

  Store s = store_extend_root(TagId{0}, Store{});
  StepResult r2 = step(s, tm_subtag(ty_top(), name_tag(TagId{0})));
  REQUIRE(r2.status == StepResult::Status::Stepped);
  CHECK(r2.rule == "r_ccls");
  CHECK(equal(r2.term, tag_term(1)));
  REQUIRE(r2.store.entries().size() == 2);
  CHECK(r2.store.entries()[0].tags == std::vector<TagId>{TagId{1}, TagId{0}});
  REQUIRE(r2.alloc.has_value());
  CHECK(r2.alloc->parent == TagId{0});

  StepResult missing = step(Store{}, tm_subtag(ty_top(), name_tag(TagId{7})));
  CHECK(missing.status == StepResult::Status::Stuck);
  CHECK(missing.reason == "SubTag parent not in store");
}

TEST_CASE("match picks the branch by path membership") {
  Store s = chain_store();
  TmRef scrut = tm_new(name_tag(TagId{1}), tm_unit());
  TmRef hit = tm_name(name_var("y"));
  TmRef m = tm_match(scrut, name_tag(TagId{0}), "y", hit, tm_unit());
  StepResult r = step(s, m);
  REQUIRE(r.status == StepResult::Status::Stepped);
  CHECK(r.rule == "r_matchsuc");
  // The binder receives the whole scrutinee value.
  CHECK(equal(r.term, scrut));
  CHECK(r.store.entries().size() == s.entries().size());

  // Downcast attempt: the pattern is below the scrutinee's tag.
  TmRef down = tm_match(tm_new(name_tag(TagId{0}), tm_unit()), name_tag(TagId{1}), "y",
                        tm_name(name_var("y")), tm_unit());
  StepResult r2 = step(s, down);
  REQUIRE(r2.status == StepResult::Status::Stepped);
  CHECK(r2.rule == "r_matchfail");
  CHECK(equal(r2.term, tm_unit()));

  // Scrutinee tag missing from the store.
  TmRef ghost = tm_match(tm_new(name_tag(TagId{9}), tm_unit()), name_tag(TagId{0}), "y",
                         tm_unit(), tm_unit());
  StepResult r3 = step(s, ghost);
  CHECK(r3.status == StepResult::Status::Stuck);
  CHECK(r3.reason == "Match scrutinee tag not in store");

  // Congruence on the scrutinee, threading the store.
  TmRef computing = tm_match(tm_newtag(ty_top()), name_tag(TagId{0}), "y", tm_unit(), tm_unit());
  StepResult r4 = step(s, computing);
  REQUIRE(r4.status == StepResult::Status::Stepped);
  CHECK(r4.rule == "r_match/r_cls");
  CHECK(r4.store.entries().size() == s.entries().size() + 1);
}

TEST_CASE("extract unwraps values") {
  Store s = store_extend_root(TagId{0}, Store{});
  StepResult r = step(s, tm_extract(tm_new(name_tag(TagId{0}), tm_unit())));
  REQUIRE(r.status == StepResult::Status::Stepped);
  CHECK(r.rule == "r_untag2");
  CHECK(equal(r.term, tm_unit()));
  StepResult r2 = step(s, tm_extract(tm_unit()));
  CHECK(r2.status == StepResult::Status::Stuck);
  CHECK(r2.reason == "Extract of non-New value");
  StepResult r3 = step(s, tm_extract(tm_extract(tm_new(name_tag(TagId{0}), tm_unit()))));
  REQUIRE(r3.status == StepResult::Status::Stepped);
  CHECK(r3.rule == "r_untag1/r_untag2");
}

TEST_CASE("beta reduction and congruence order") {
  Store s;
  TmRef id = tm_lam("x", ty_top(), tm_name(name_var("x")));
  StepResult r = step(s, tm_app(id, tm_unit()));
  REQUIRE(r.status == StepResult::Status::Stepped);
  CHECK(r.rule == "r_appabs");
  CHECK(equal(r.term, tm_unit()));
  // Left before right.
  TmRef both = tm_app(tm_app(id, id), tm_newtag(ty_top()));
  StepResult r2 = step(s, both);
  CHECK(r2.rule == "r_app1/r_appabs");
  TmRef right = tm_app(id, tm_newtag(ty_top()));
  StepResult r3 = step(s, right);
  CHECK(r3.rule == "r_app2/r_cls");
  CHECK(step(s, tm_app(tm_unit(), tm_unit())).status == StepResult::Status::Stuck);
}

TEST_CASE("records project and step head before tail") {
  Store s;
  TmRef rec = tm_rcons("f", tm_unit(), tm_rcons("g", tm_rnil(), tm_rnil()));
  StepResult r = step(s, tm_proj(rec, "g"));
  REQUIRE(r.status == StepResult::Status::Stepped);
  CHECK(r.rule == "r_projrcd");
  CHECK(equal(r.term, tm_rnil()));
  CHECK(step(s, tm_proj(rec, "h")).reason == "projection label missing");
  TmRef busy_head = tm_rcons("f", tm_newtag(ty_top()), tm_rcons("g", tm_newtag(ty_top()), tm_rnil()));
  CHECK(step(s, busy_head).rule == "r_rcdhead/r_cls");
  TmRef busy_tail = tm_rcons("f", tm_unit(), tm_rcons("g", tm_newtag(ty_top()), tm_rnil()));
  CHECK(step(s, busy_tail).rule == "r_rcdtail/r_rcdhead/r_cls");
}

TEST_CASE("let, fix, fold and pairs") {
  Store s;
  StepResult r = step(s, tm_let("x", tm_unit(), tm_name(name_var("x"))));
  CHECK(r.rule == "r_letv");
  CHECK(equal(r.term, tm_unit()));
  CHECK(step(s, tm_let("x", tm_newtag(ty_top()), tm_unit())).rule == "r_let/r_cls");

  TmRef fix = tm_fix(tm_lam("x", ty_top(), tm_unit()));
  StepResult r2 = step(s, fix);
  CHECK(r2.rule == "r_fixb");
  CHECK(equal(r2.term, tm_unit()));
  // The fix body sees the whole fix for x.
  TmRef looping = tm_fix(tm_lam("x", ty_top(), tm_name(name_var("x"))));
  StepResult r3 = step(s, looping);
  CHECK(equal(r3.term, looping));

  TyRef mu = ty_mu("t", ty_top());
  StepResult r4 = step(s, tm_unfold(tm_fold(mu, tm_unit())));
  CHECK(r4.rule == "r_unfldfld");
  CHECK(equal(r4.term, tm_unit()));
  CHECK(step(s, tm_fold(mu, tm_newtag(ty_top()))).rule == "r_fld/r_cls");
  CHECK(step(s, tm_unfold(tm_fold(mu, tm_newtag(ty_top())))).rule == "r_unfld/r_fld/r_cls");
  CHECK(step(s, tm_unfold(tm_unit())).status == StepResult::Status::Stuck);

  TmRef pair = tm_pair(tm_unit(), tm_rnil());
  CHECK(step(s, tm_fst(pair)).rule == "r_pairv1");
  CHECK(equal(step(s, tm_fst(pair)).term, tm_unit()));
  CHECK(step(s, tm_snd(pair)).rule == "r_pairv2");
  CHECK(equal(step(s, tm_snd(pair)).term, tm_rnil()));
  CHECK(step(s, tm_pair(tm_newtag(ty_top()), tm_unit())).rule == "r_pair1/r_cls");
  CHECK(step(s, tm_pair(tm_unit(), tm_newtag(ty_top()))).rule == "r_pair2/r_cls");
  CHECK(step(s, tm_fst(tm_pair(tm_newtag(ty_top()), tm_unit()))).rule == "r_proj1/r_pair1/r_cls");
  CHECK(step(s, tm_snd(tm_unit())).status == StepResult::Status::Stuck);
}

TEST_CASE("open names are stuck") {
  Store s;
  CHECK(step(s, tm_name(name_var("x"))).reason == "open name");
  CHECK(step(s, tm_name(name_tag(TagId{4}))).reason == "tag not in store");
  CHECK(step(s, tm_new(name_var("x"), tm_unit())).status == StepResult::Status::Value);
}

TEST_CASE("evaluate runs the whole allocation-and-extract program") {
  // Let x be NewTag[Top] in Extract{New{< >}(x)}
  TmRef program =
      tm_let("x", tm_newtag(ty_top()),
             tm_extract(tm_new(name_var("x"), tm_unit())));
  EvalResult r = evaluate(Store{}, program, 100);
  CHECK(r.status == EvalResult::Status::Value);
  CHECK(equal(r.term, tm_unit()));
  REQUIRE(r.store.entries().size() == 1);
  CHECK(r.store.entries()[0].tags == std::vector<TagId>{TagId{0}});
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].rule == "r_let/r_cls");
  CHECK(r.trace[1].rule == "r_letv");
  CHECK(r.trace[2].rule == "r_untag2");
}

TEST_CASE("evaluate respects fuel") {
  EvalResult r = evaluate(Store{}, tm_unit(), 0);
  CHECK(r.status == EvalResult::Status::Value);
  CHECK(r.trace.empty());
  // Divergent self-application through fix.
  TmRef loop = tm_fix(tm_lam("x", ty_top(), tm_app(tm_name(name_var("x")), tm_unit())));
  EvalResult r2 = evaluate(Store{}, loop, 10);
  CHECK(r2.status == EvalResult::Status::OutOfFuel);
  CHECK(r2.trace.size() == 10);
}

TEST_CASE("determinism: equal states step identically") {
  std::mt19937_64 rng(81);
  Store s = chain_store();
  for (int i = 0; i < 800; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    StepResult a = step(s, e);
    StepResult b = step(s, e);
    CHECK(a.status == b.status);
    if (a.status == StepResult::Status::Stepped) {
      CHECK(equal(a.term, b.term));
      CHECK(a.rule == b.rule);
      CHECK(store_dump(a.store) == store_dump(b.store));
    }
  }
}

TEST_CASE("values do not step") {
  std::mt19937_64 rng(91);
  Store s = chain_store();
  for (int i = 0; i < 800; ++i) {
    TmRef e = testgen::gen_tm(rng, 3);
    if (!is_value(s, *e)) continue;
    CHECK(step(s, e).status == StepResult::Status::Value);
  }
}

TEST_CASE("store monotonicity and growth only via allocation rules") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 400; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    Store s = chain_store();
    TmRef cur = e;
    for (int k = 0; k < 30; ++k) {
      StepResult r = step(s, cur);
      if (r.status != StepResult::Status::Stepped) break;
      for (const Path& p : s.entries()) {
        CHECK(store_contains(p.tags.front(), r.store));
      }
      bool allocating = r.rule.find("r_cls") != std::string::npos ||
                        r.rule.find("r_ccls") != std::string::npos;
      if (!allocating) {
        CHECK(store_dump(r.store) == store_dump(s));
      } else {
        CHECK(r.store.entries().size() == s.entries().size() + 1);
      }
      s = r.store;
      cur = r.term;
    }
  }
}

TEST_CASE("extract is inverse to new on generated values") {
  std::mt19937_64 rng(111);
  Store s = chain_store();
  for (int i = 0; i < 600; ++i) {
    TmRef v = testgen::gen_tm(rng, 3);
    if (!is_value(s, *v)) continue;
    EvalResult r = evaluate(s, tm_extract(tm_new(name_tag(TagId{0}), v)), 10);
    CHECK(r.status == EvalResult::Status::Value);
    CHECK(equal(r.term, v));
  }
}

TEST_CASE("unfold cancels fold on generated values") {
  std::mt19937_64 rng(121);
  Store s = chain_store();
  TyRef mu = ty_mu("t", ty_top());
  for (int i = 0; i < 600; ++i) {
    TmRef v = testgen::gen_tm(rng, 3);
    if (!is_value(s, *v)) continue;
    StepResult r = step(s, tm_unfold(tm_fold(mu, v)));
    REQUIRE(r.status == StepResult::Status::Stepped);
    CHECK(r.rule == "r_unfldfld");
    CHECK(equal(r.term, v));
  }
}

TEST_CASE("trace rendering format") {
  TmRef program = tm_let("x", tm_newtag(ty_top()),
                         tm_extract(tm_new(name_var("x"), tm_unit())));
  EvalResult r = evaluate(Store{}, program, 100);
  std::string trace = render_trace(program, Store{}, r);
  CHECK(trace ==
        "0: init  e := Let x be NewTag[Top] in Extract{New{< >}(x)}  store :=\n"
        "next_id: 0\n"
        "1: r_let/r_cls  e := Let x be #0 in Extract{New{< >}(x)}  store :=\n"
        "#0 -> .\n"
        "next_id: 1\n"
        "2: r_letv  e := Extract{New{< >}(x)}\n"
        "3: r_untag2  e := < >\n");
}
