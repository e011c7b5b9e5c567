// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace tagcalc {

/// Identity of a runtime-generated tag. Ids come from the store's monotone
/// counter, so they are totally ordered and equality is decidable. Source
/// programs never spell a TagId except through an initial-store declaration
/// or evaluation output.
struct TagId {
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(const TagId&, const TagId&) = default;
};

struct Name;
struct Ty;
struct Tm;
using NameRef = std::shared_ptr<const Name>;
using TyRef = std::shared_ptr<const Ty>;
using TmRef = std::shared_ptr<const Tm>;

/// Names: the restricted expression class allowed inside types.
/// n ::= x | #c | Fst(n) | Unfold(n)
struct Name {
  enum class Kind { Var, Tag, Fst, Unfold };
  Kind kind;
  std::string ident;  // Var
  TagId tag;          // Tag
  NameRef inner;      // Fst / Unfold
};

NameRef name_var(std::string ident);
NameRef name_tag(TagId id);
NameRef name_fst(NameRef inner);
NameRef name_unfold(NameRef inner);

/// Types. Records are cons-lists (RCons label head tail) terminated by RNil;
/// tails are unconstrained at construction time, so wellformed_ty must be
/// checked before a type enters a context.
struct Ty {
  enum class Kind { Tag, TagExt, Tagged, Prod, Sum, RNil, RCons, Mu, Top, Var };
  Kind kind;
  std::string ident;  // Prod/Sum binder, RCons label, Mu binder, Var name
  TyRef a;            // Tag/TagExt body, Prod dom, Sum first, RCons head, Mu body
  TyRef b;            // Prod cod, Sum second, RCons tail
  NameRef name;       // Tagged name, TagExt parent
};

TyRef ty_top();
TyRef ty_var(std::string ident);
TyRef ty_tag(TyRef body);
TyRef ty_tag_ext(TyRef body, NameRef parent);
TyRef ty_tagged(NameRef n);
TyRef ty_prod(std::string binder, TyRef dom, TyRef cod);
TyRef ty_sum(std::string binder, TyRef first, TyRef second);
TyRef ty_rnil();
TyRef ty_rcons(std::string label, TyRef head, TyRef tail);
TyRef ty_mu(std::string binder, TyRef body);

/// Terms. Child slots a/b/c are positional: Match uses a=scrutinee, b=hit,
/// c=miss; App a=fn, b=arg; RCons a=head, b=tail; Let a=bound, b=body;
/// Pair a/b; the unary forms use a.
struct Tm {
  enum class Kind {
    NewTag, SubTag, New, Match, Extract,
    Lam, App,
    RNil, RCons, Proj,
    Let, Fix,
    Fold, Unfold,
    Pair, Fst, Snd,
    Unit, Name
  };
  Kind kind;
  std::string ident;  // Lam/Let binder, Match binder, RCons/Proj label
  TyRef type;         // NewTag/SubTag/Lam/Fold annotation
  NameRef name;       // SubTag parent, New tag, Match tag, Name payload
  TmRef a;
  TmRef b;
  TmRef c;
};

TmRef tm_newtag(TyRef body);
TmRef tm_subtag(TyRef body, NameRef parent);
TmRef tm_new(NameRef tag, TmRef payload);
TmRef tm_match(TmRef scrutinee, NameRef tag, std::string binder, TmRef hit, TmRef miss);
TmRef tm_extract(TmRef e);
TmRef tm_lam(std::string binder, TyRef dom, TmRef body);
TmRef tm_app(TmRef fn, TmRef arg);
TmRef tm_rnil();
TmRef tm_rcons(std::string label, TmRef head, TmRef tail);
TmRef tm_proj(TmRef e, std::string label);
TmRef tm_let(std::string binder, TmRef bound, TmRef body);
TmRef tm_fix(TmRef e);
TmRef tm_fold(TyRef annot, TmRef e);
TmRef tm_unfold(TmRef e);
TmRef tm_pair(TmRef left, TmRef right);
TmRef tm_fst(TmRef e);
TmRef tm_snd(TmRef e);
TmRef tm_unit();
TmRef tm_name(NameRef n);

/// Recursive let binding as a derived form:
/// LetRec x:T be e1 in e2  ==  Let x be Fix{/x:T,e1} in e2
TmRef tm_letrec(const std::string& binder, TyRef annot, TmRef bound, TmRef body);

// Structural equality. Refs compare null-safe with a pointer fast path.
bool equal(const Name& a, const Name& b);
bool equal(const Ty& a, const Ty& b);
bool equal(const Tm& a, const Tm& b);
bool equal(const NameRef& a, const NameRef& b);
bool equal(const TyRef& a, const TyRef& b);
bool equal(const TmRef& a, const TmRef& b);

/// True iff T is RNil or RCons.
bool record_ty(const Ty& t);
/// True iff e is RNilTm or RConsTm.
bool record_tm(const Tm& e);

/// Every record spine in T ends in RNil, every RCons tail is itself a record
/// type, labels on one spine are pairwise distinct, and all subterms are
/// recursively wellformed.
bool wellformed_ty(const Ty& t);

/// First spine position whose label matches, or absent.
std::optional<TyRef> ty_lookup(const std::string& label, const Ty& record);
std::optional<TmRef> tm_lookup(const std::string& label, const Tm& record);

/// Free identifiers of a term: variables used in names (in both term and
/// type positions) together with free type variables. Lam/Let and the Match
/// binder scope over their bodies; Prod/Sum binders scope over the second
/// component; Mu binds its type variable.
std::set<std::string> free_vars(const Tm& e);
std::set<std::string> free_vars_ty(const Ty& t);
std::set<std::string> free_vars_name(const Name& n);

/// Number of Tm nodes (names and types do not count).
std::size_t tm_size(const Tm& e);

}  // namespace tagcalc
