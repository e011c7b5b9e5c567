// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "support/generators.hpp"
#include "tagcalc/parser.hpp"
#include "tagcalc/pretty.hpp"
#include "tagcalc/soundness.hpp"

using namespace tagcalc;

namespace {

TmRef must_parse(const std::string& text) {
  auto r = parse_term(text);
  REQUIRE_MESSAGE(std::holds_alternative<TmRef>(r),
                  (text + ": " + render(std::get<ParseError>(r))));
  return std::get<TmRef>(r);
}

TyRef must_parse_type(const std::string& text) {
  auto r = parse_type(text);
  REQUIRE_MESSAGE(std::holds_alternative<TyRef>(r),
                  (text + ": " + render(std::get<ParseError>(r))));
  return std::get<TyRef>(r);
}

}  // namespace

TEST_CASE("terms parse to the expected trees") {
  CHECK(equal(must_parse("< >"), tm_unit()));
  CHECK(equal(must_parse("nil"), tm_rnil()));
  CHECK(equal(must_parse("#3"), tm_name(name_tag(TagId{3}))));
  TmRef let = must_parse("Let x be NewTag[Top] in Extract{New{< >}(x)}");
  TmRef expected = tm_let("x", tm_newtag(ty_top()),
                          tm_extract(tm_new(name_var("x"), tm_unit())));
  CHECK(equal(let, expected));
  CHECK(equal(must_parse("/x:Top,x"), tm_lam("x", ty_top(), tm_name(name_var("x")))));
  CHECK(equal(must_parse("Match{e}(n)(x){a}{b}"),
              tm_match(tm_name(name_var("e")), name_var("n"), "x", tm_name(name_var("a")),
                       tm_name(name_var("b")))));
  CHECK(equal(must_parse("{f = < > ;; g = nil}"),
              tm_rcons("f", tm_unit(), tm_rcons("g", tm_rnil(), tm_rnil()))));
  CHECK(equal(must_parse("<a,b>"),
              tm_pair(tm_name(name_var("a")), tm_name(name_var("b")))));
  CHECK(equal(must_parse("SubTag[Top](#0)"), tm_subtag(ty_top(), name_tag(TagId{0}))));
  CHECK(equal(must_parse("Fold[mu(t):Top]{< >}"),
              tm_fold(ty_mu("t", ty_top()), tm_unit())));
}

TEST_CASE("application is left-associative and proj binds tighter") {
  TmRef fxy = must_parse("f x y");
  CHECK(equal(fxy, tm_app(tm_app(tm_name(name_var("f")), tm_name(name_var("x"))),
                          tm_name(name_var("y")))));
  TmRef projarg = must_parse("f x proj g");
  CHECK(equal(projarg, tm_app(tm_name(name_var("f")),
                              tm_proj(tm_name(name_var("x")), "g"))));
  TmRef parens = must_parse("(f x) proj g");
  CHECK(equal(parens, tm_proj(tm_app(tm_name(name_var("f")), tm_name(name_var("x"))), "g")));
  TmRef chain = must_parse("x proj f proj g");
  CHECK(equal(chain, tm_proj(tm_proj(tm_name(name_var("x")), "f"), "g")));
  TmRef lam_call = must_parse("(/x:Top,x) < >");
  CHECK(equal(lam_call, tm_app(tm_lam("x", ty_top(), tm_name(name_var("x"))), tm_unit())));
}

TEST_CASE("Fst and Unfold disambiguate between terms and names") {
  CHECK(equal(must_parse("Fst{p}"), tm_fst(tm_name(name_var("p")))));
  CHECK(equal(must_parse("Fst(p)"), tm_name(name_fst(name_var("p")))));
  CHECK(equal(must_parse("Unfold{p}"), tm_unfold(tm_name(name_var("p")))));
  CHECK(equal(must_parse("Unfold(p)"), tm_name(name_unfold(name_var("p")))));
  CHECK(equal(must_parse("New{< >}(Fst(p))"),
              tm_new(name_fst(name_var("p")), tm_unit())));
}

TEST_CASE("letrec desugars at parse time") {
  TmRef parsed = must_parse("LetRec f:Prod[x:Top],Top be /x:Top,x in f");
  TmRef expected = tm_letrec("f", ty_prod("x", ty_top(), ty_top()),
                             tm_lam("x", ty_top(), tm_name(name_var("x"))),
                             tm_name(name_var("f")));
  CHECK(equal(parsed, expected));
}

TEST_CASE("types parse") {
  CHECK(equal(must_parse_type("Top"), ty_top()));
  CHECK(equal(must_parse_type("t"), ty_var("t")));
  CHECK(equal(must_parse_type("nil"), ty_rnil()));
  CHECK(equal(must_parse_type("Tag[Top]"), ty_tag(ty_top())));
  CHECK(equal(must_parse_type("Tag[Top]Extends(#0)"),
              ty_tag_ext(ty_top(), name_tag(TagId{0}))));
  CHECK(equal(must_parse_type("Tagged(Unfold(x))"),
              ty_tagged(name_unfold(name_var("x")))));
  CHECK(equal(must_parse_type("Prod[x:Top],Top"), ty_prod("x", ty_top(), ty_top())));
  CHECK(equal(must_parse_type("Sum[x:Top]t"), ty_sum("x", ty_top(), ty_var("t"))));
  CHECK(equal(must_parse_type("{f:Top ;; g:nil}"),
              ty_rcons("f", ty_top(), ty_rcons("g", ty_rnil(), ty_rnil()))));
  CHECK(equal(must_parse_type("mu(t):{f:t}"),
              ty_mu("t", ty_rcons("f", ty_var("t"), ty_rnil()))));
  // Nested binders keep their commas straight.
  CHECK(equal(must_parse_type("Prod[x:Prod[y:Top],Top],Top"),
              ty_prod("x", ty_prod("y", ty_top(), ty_top()), ty_top())));
}

TEST_CASE("parse errors carry positions") {
  auto r = parse_term("Match{e}(");
  REQUIRE(std::holds_alternative<ParseError>(r));
  ParseError e = std::get<ParseError>(r);
  CHECK(e.line == 1);
  CHECK(e.column == 9);
  auto r2 = parse_term("{f = }");
  REQUIRE(std::holds_alternative<ParseError>(r2));
  auto r3 = parse_term("Let x be in y");
  REQUIRE(std::holds_alternative<ParseError>(r3));
  auto r4 = parse_term("");
  REQUIRE(std::holds_alternative<ParseError>(r4));
  auto r5 = parse_term("x ;");
  REQUIRE(std::holds_alternative<ParseError>(r5));
  auto multiline = parse_term("Let x be\n  NewTag[)] in x");
  REQUIRE(std::holds_alternative<ParseError>(multiline));
  CHECK(std::get<ParseError>(multiline).line == 2);
}

TEST_CASE("programs parse declarations into valid contexts") {
  std::string text =
      "tag #0 : Top\n"
      "tag #1 : Top extends #0\n"
      "tag #3 : Top\n"
      "Match{New{< >}(#1)}(#0)(y){y}{< >}";
  auto r = parse_program(text);
  REQUIRE(std::holds_alternative<ProgramFile>(r));
  ProgramFile p = std::get<ProgramFile>(r);
  REQUIRE(p.declarations.size() == 3);
  CHECK(p.declarations[1].parent == TagId{0});
  TagCtx sigma;
  Store store;
  CHECK_FALSE(induced_contexts(p, sigma, store).has_value());
  CHECK(storecontext_check(sigma, store));
  CHECK(store.next_id() == 4);
  // Bad declarations are rejected.
  auto dup = parse_program("tag #0 : Top\ntag #0 : Top\n< >");
  REQUIRE(std::holds_alternative<ProgramFile>(dup));
  TagCtx s2;
  Store st2;
  CHECK(induced_contexts(std::get<ProgramFile>(dup), s2, st2).has_value());
  auto orphan = parse_program("tag #1 : Top extends #5\n< >");
  REQUIRE(std::holds_alternative<ProgramFile>(orphan));
  CHECK(induced_contexts(std::get<ProgramFile>(orphan), s2, st2).has_value());
}

TEST_CASE("comments and whitespace are trivia") {
  TmRef t = must_parse("// leading comment\nLet x be < > in // trailing\n x");
  CHECK(equal(t, tm_let("x", tm_unit(), tm_name(name_var("x")))));
}

TEST_CASE("pretty emits the canonical spellings") {
  CHECK(pretty(tm_unit()) == "< >");
  CHECK(pretty(ty_prod("x", ty_top(), ty_top())) == "Prod[x:Top],Top");
  CHECK(pretty(ty_sum("x", ty_top(), ty_var("t"))) == "Sum[x:Top]t");
  CHECK(pretty(name_fst(name_tag(TagId{2}))) == "Fst(#2)");
  CHECK(pretty(tm_app(tm_lam("x", ty_top(), tm_name(name_var("x"))), tm_unit())) ==
        "(/x:Top,x) < >");
  CHECK(pretty(tm_rcons("f", tm_unit(), tm_rnil())) == "{f = < >}");
  CHECK(pretty(ty_mu("t", ty_rcons("f", ty_var("t"), ty_rnil()))) == "mu(t):{f:t}");
}

TEST_CASE("arbitrary input never crashes the parser") {
  std::mt19937_64 rng(99);
  const std::string alphabet = "ax#09{}()[]<>,:;=/ \n\tproj LetMatchTag";
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    std::size_t len = rng() % 40;
    for (std::size_t k = 0; k < len; ++k) text.push_back(alphabet[rng() % alphabet.size()]);
    auto r = parse_program(text);  // must return cleanly either way
    if (std::holds_alternative<ParseError>(r)) {
      CHECK(std::get<ParseError>(r).line >= 1);
    }
  }
}

TEST_CASE("round trip: parse after pretty is the identity") {
  std::mt19937_64 rng(131);
  for (int i = 0; i < 1500; ++i) {
    TmRef e = testgen::gen_tm(rng, 4);
    std::string text = pretty(e);
    auto r = parse_term(text);
    REQUIRE_MESSAGE(std::holds_alternative<TmRef>(r),
                    (text + ": " + render(std::get<ParseError>(r))));
    CHECK_MESSAGE(equal(std::get<TmRef>(r), e), text);
  }
  for (int i = 0; i < 1000; ++i) {
    TyRef t = testgen::gen_ty(rng, 4);
    std::string text = pretty(t);
    auto r = parse_type(text);
    REQUIRE_MESSAGE(std::holds_alternative<TyRef>(r),
                    (text + ": " + render(std::get<ParseError>(r))));
    CHECK_MESSAGE(equal(std::get<TyRef>(r), t), text);
  }
}
