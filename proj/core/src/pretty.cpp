// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/pretty.hpp"

#include <sstream>

namespace tagcalc {

namespace {

// Print contexts. Only applications, projections and the statement-like
// binders need parentheses; every braced/bracketed form is self-delimiting.
enum class Ctx {
  Term,     // full term: lambdas and lets print bare
  Callee,   // function position of an application
  Arg,      // argument position of an application
  Subject,  // subject of a projection (chains stay bare)
};

void print_tm(std::ostream& os, const Tm& e, Ctx ctx);

void print_name(std::ostream& os, const Name& n) {
  switch (n.kind) {
    case Name::Kind::Var: os << n.ident; return;
    case Name::Kind::Tag: os << '#' << n.tag.value; return;
    case Name::Kind::Fst:
      os << "Fst(";
      print_name(os, *n.inner);
      os << ')';
      return;
    case Name::Kind::Unfold:
      os << "Unfold(";
      print_name(os, *n.inner);
      os << ')';
      return;
  }
}

void print_ty(std::ostream& os, const Ty& t) {
  switch (t.kind) {
    case Ty::Kind::Top: os << "Top"; return;
    case Ty::Kind::Var: os << t.ident; return;
    case Ty::Kind::Tag:
      os << "Tag[";
      print_ty(os, *t.a);
      os << ']';
      return;
    case Ty::Kind::TagExt:
      os << "Tag[";
      print_ty(os, *t.a);
      os << "]Extends(";
      print_name(os, *t.name);
      os << ')';
      return;
    case Ty::Kind::Tagged:
      os << "Tagged(";
      print_name(os, *t.name);
      os << ')';
      return;
    case Ty::Kind::Prod:
      os << "Prod[" << t.ident << ':';
      print_ty(os, *t.a);
      os << "],";
      print_ty(os, *t.b);
      return;
    case Ty::Kind::Sum:
      os << "Sum[" << t.ident << ':';
      print_ty(os, *t.a);
      os << ']';
      print_ty(os, *t.b);
      return;
    case Ty::Kind::RNil: os << "nil"; return;
    case Ty::Kind::RCons: {
      os << '{';
      const Ty* cur = &t;
      bool first = true;
      while (cur->kind == Ty::Kind::RCons) {
        if (!first) os << " ;; ";
        first = false;
        os << cur->ident << ':';
        print_ty(os, *cur->a);
        cur = cur->b.get();
      }
      os << '}';
      return;
    }
    case Ty::Kind::Mu:
      os << "mu(" << t.ident << "):";
      print_ty(os, *t.a);
      return;
  }
}

bool needs_parens(const Tm& e, Ctx ctx) {
  switch (e.kind) {
    case Tm::Kind::Lam:
    case Tm::Kind::Let:
      return ctx != Ctx::Term;
    case Tm::Kind::App:
      return ctx == Ctx::Arg || ctx == Ctx::Subject;
    case Tm::Kind::Proj:
      return false;  // proj binds tighter than application
    default:
      return false;
  }
}

void print_tm_node(std::ostream& os, const Tm& e) {
  switch (e.kind) {
    case Tm::Kind::NewTag:
      os << "NewTag[";
      print_ty(os, *e.type);
      os << ']';
      return;
    case Tm::Kind::SubTag:
      os << "SubTag[";
      print_ty(os, *e.type);
      os << "](";
      print_name(os, *e.name);
      os << ')';
      return;
    case Tm::Kind::New:
      os << "New{";
      print_tm(os, *e.a, Ctx::Term);
      os << "}(";
      print_name(os, *e.name);
      os << ')';
      return;
    case Tm::Kind::Match:
      os << "Match{";
      print_tm(os, *e.a, Ctx::Term);
      os << "}(";
      print_name(os, *e.name);
      os << ")(" << e.ident << "){";
      print_tm(os, *e.b, Ctx::Term);
      os << "}{";
      print_tm(os, *e.c, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Extract:
      os << "Extract{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Lam:
      os << '/' << e.ident << ':';
      print_ty(os, *e.type);
      os << ',';
      print_tm(os, *e.a, Ctx::Term);
      return;
    case Tm::Kind::App:
      print_tm(os, *e.a, Ctx::Callee);
      os << ' ';
      print_tm(os, *e.b, Ctx::Arg);
      return;
    case Tm::Kind::RNil: os << "nil"; return;
    case Tm::Kind::RCons: {
      os << '{';
      const Tm* cur = &e;
      bool first = true;
      while (cur->kind == Tm::Kind::RCons) {
        if (!first) os << " ;; ";
        first = false;
        os << cur->ident << " = ";
        print_tm(os, *cur->a, Ctx::Term);
        cur = cur->b.get();
      }
      os << '}';
      return;
    }
    case Tm::Kind::Proj:
      print_tm(os, *e.a, Ctx::Subject);
      os << " proj " << e.ident;
      return;
    case Tm::Kind::Let:
      os << "Let " << e.ident << " be ";
      print_tm(os, *e.a, Ctx::Term);
      os << " in ";
      print_tm(os, *e.b, Ctx::Term);
      return;
    case Tm::Kind::Fix:
      os << "Fix{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Fold:
      os << "Fold[";
      print_ty(os, *e.type);
      os << "]{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Unfold:
      os << "Unfold{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Pair:
      os << '<';
      print_tm(os, *e.a, Ctx::Term);
      os << ',';
      print_tm(os, *e.b, Ctx::Term);
      os << '>';
      return;
    case Tm::Kind::Fst:
      os << "Fst{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Snd:
      os << "Snd{";
      print_tm(os, *e.a, Ctx::Term);
      os << '}';
      return;
    case Tm::Kind::Unit: os << "< >"; return;
    case Tm::Kind::Name: print_name(os, *e.name); return;
  }
}

void print_tm(std::ostream& os, const Tm& e, Ctx ctx) {
  if (needs_parens(e, ctx)) {
    os << '(';
    print_tm_node(os, e);
    os << ')';
  } else {
    print_tm_node(os, e);
  }
}

}  // namespace

std::string pretty(const Name& n) {
  std::ostringstream os;
  print_name(os, n);
  return os.str();
}

std::string pretty(const Ty& t) {
  std::ostringstream os;
  print_ty(os, t);
  return os.str();
}

std::string pretty(const Tm& e) {
  std::ostringstream os;
  print_tm(os, e, Ctx::Term);
  return os.str();
}

std::string pretty(const NameRef& n) { return pretty(*n); }
std::string pretty(const TyRef& t) { return pretty(*t); }
std::string pretty(const TmRef& e) { return pretty(*e); }

}  // namespace tagcalc
