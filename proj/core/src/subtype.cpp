// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/subtype.hpp"

#include <sstream>

#include "tagcalc/pretty.hpp"
#include "tagcalc/substitution.hpp"

namespace tagcalc {

std::optional<TyRef> name_tag_type(const TypingCtx& gamma, const TagCtx& sigma, const Name& n) {
  switch (n.kind) {
    case Name::Kind::Var:
      return gamma.lookup(n.ident);
    case Name::Kind::Tag: {
      std::optional<TagBinding> b = sigma.lookup(n.tag);
      if (!b) return std::nullopt;
      if (b->parent) return ty_tag_ext(b->body, b->parent);
      return ty_tag(b->body);
    }
    case Name::Kind::Fst: {
      std::optional<TyRef> inner = name_tag_type(gamma, sigma, *n.inner);
      if (!inner || (*inner)->kind != Ty::Kind::Sum) return std::nullopt;
      return (*inner)->a;
    }
    case Name::Kind::Unfold: {
      std::optional<TyRef> inner = name_tag_type(gamma, sigma, *n.inner);
      if (!inner || (*inner)->kind != Ty::Kind::Mu) return std::nullopt;
      return subst_tyvar((*inner)->ident, *inner, (*inner)->a);
    }
  }
  return std::nullopt;
}

static bool chain_contains(const std::vector<NameRef>& chain, const Name& n) {
  for (const NameRef& m : chain) {
    if (equal(*m, n)) return true;
  }
  return false;
}

std::vector<NameRef> ancestor_chain(const TypingCtx& gamma, const TagCtx& sigma, const Name& n) {
  std::vector<NameRef> chain;
  NameRef cur = std::make_shared<Name>(n);
  for (;;) {
    if (chain_contains(chain, *cur)) break;  // malformed contexts could cycle
    chain.push_back(cur);
    std::optional<TyRef> t = name_tag_type(gamma, sigma, *cur);
    if (!t || (*t)->kind != Ty::Kind::TagExt) break;
    cur = (*t)->name;
  }
  return chain;
}

bool mutual_supertype(const TypingCtx& gamma, const TagCtx& sigma, const Name& n,
                      const Name& n2) {
  std::vector<NameRef> left = ancestor_chain(gamma, sigma, n);
  std::vector<NameRef> right = ancestor_chain(gamma, sigma, n2);
  for (const NameRef& a : left) {
    if (chain_contains(right, *a)) return true;
  }
  return false;
}

namespace {

bool sub(const AmberEnv& delta, const TypingCtx& gamma, const TagCtx& sigma, const Ty& lhs,
         const Ty& rhs);

// Tagged(n) <: Tagged(n2): n2 appears in n's supertag chain.
bool tagged_sub(const TypingCtx& gamma, const TagCtx& sigma, const Name& n, const Name& n2) {
  return chain_contains(ancestor_chain(gamma, sigma, n), n2);
}

bool sub(const AmberEnv& delta, const TypingCtx& gamma, const TagCtx& sigma, const Ty& lhs,
         const Ty& rhs) {
  if (equal(lhs, rhs)) return true;  // ST-Reflexive

  // ST-Amber-1
  if (lhs.kind == Ty::Kind::Var && rhs.kind == Ty::Kind::Var) {
    return delta.contains(lhs.ident, rhs.ident);
  }
  // ST-Amber-2
  if (lhs.kind == Ty::Kind::Mu && rhs.kind == Ty::Kind::Mu) {
    return sub(delta.inserted(lhs.ident, rhs.ident), gamma, sigma, *lhs.a, *rhs.a);
  }
  // Record width/depth/permutation as one lookup-driven rule.
  if (record_ty(lhs) && record_ty(rhs)) {
    const Ty* want = &rhs;
    while (want->kind == Ty::Kind::RCons) {
      std::optional<TyRef> got = ty_lookup(want->ident, lhs);
      if (!got || !sub(delta, gamma, sigma, **got, *want->a)) return false;
      want = want->b.get();
    }
    return true;
  }
  // ST-App: contravariant domain, codomain under the extended context.
  if (lhs.kind == Ty::Kind::Prod && rhs.kind == Ty::Kind::Prod) {
    if (lhs.ident != rhs.ident) return false;
    if (!sub(delta, gamma, sigma, *rhs.a, *lhs.a)) return false;
    TypingCtx extended = gamma.updated(rhs.ident, rhs.a);
    return sub(delta, extended, sigma, *lhs.b, *rhs.b);
  }
  // ST-Tag-1 with transitivity built into the chain walk.
  if (lhs.kind == Ty::Kind::Tagged && rhs.kind == Ty::Kind::Tagged) {
    return tagged_sub(gamma, sigma, *lhs.name, *rhs.name);
  }
  // ST-Tag-2: same body, supertag parents.
  if (lhs.kind == Ty::Kind::TagExt && rhs.kind == Ty::Kind::TagExt) {
    return equal(lhs.a, rhs.a) && tagged_sub(gamma, sigma, *lhs.name, *rhs.name);
  }
  // ST-Tag-3
  if (lhs.kind == Ty::Kind::TagExt && rhs.kind == Ty::Kind::Tag) {
    return equal(lhs.a, rhs.a);
  }
  return false;
}

}  // namespace

bool subtype_check(const AmberEnv& delta, const TypingCtx& gamma, const TagCtx& sigma,
                   const Ty& lhs, const Ty& rhs) {
  return sub(delta, gamma, sigma, lhs, rhs);
}

bool subtype_check(const SubtypeQuery& q) {
  return sub(q.delta, q.gamma, q.sigma, *q.lhs, *q.rhs);
}

namespace {

std::string conclusion_of(const Ty& lhs, const Ty& rhs) {
  return pretty(lhs) + " <: " + pretty(rhs);
}

std::optional<SubtypeTrace> derive(const AmberEnv& delta, const TypingCtx& gamma,
                                   const TagCtx& sigma, const TyRef& lhs, const TyRef& rhs);

std::optional<SubtypeTrace> derive_tagged(const TypingCtx& gamma, const TagCtx& sigma,
                                          const NameRef& n, const NameRef& n2) {
  std::vector<NameRef> chain = ancestor_chain(gamma, sigma, *n);
  std::size_t pos = chain.size();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (equal(*chain[i], *n2)) {
      pos = i;
      break;
    }
  }
  if (pos == chain.size()) return std::nullopt;
  SubtypeTrace t{"ST-Reflexive", conclusion_of(*ty_tagged(chain[pos]), *ty_tagged(n2)), {}};
  for (std::size_t i = pos; i-- > 0;) {
    t = SubtypeTrace{"ST-Tag-1", conclusion_of(*ty_tagged(chain[i]), *ty_tagged(n2)), {t}};
  }
  return t;
}

std::optional<SubtypeTrace> derive(const AmberEnv& delta, const TypingCtx& gamma,
                                   const TagCtx& sigma, const TyRef& lhs, const TyRef& rhs) {
  if (equal(lhs, rhs)) return SubtypeTrace{"ST-Reflexive", conclusion_of(*lhs, *rhs), {}};
  if (lhs->kind == Ty::Kind::Var && rhs->kind == Ty::Kind::Var) {
    if (!delta.contains(lhs->ident, rhs->ident)) return std::nullopt;
    return SubtypeTrace{"ST-Amber-1", conclusion_of(*lhs, *rhs), {}};
  }
  if (lhs->kind == Ty::Kind::Mu && rhs->kind == Ty::Kind::Mu) {
    std::optional<SubtypeTrace> body =
        derive(delta.inserted(lhs->ident, rhs->ident), gamma, sigma, lhs->a, rhs->a);
    if (!body) return std::nullopt;
    return SubtypeTrace{"ST-Amber-2", conclusion_of(*lhs, *rhs), {*body}};
  }
  if (record_ty(*lhs) && record_ty(*rhs)) {
    std::vector<SubtypeTrace> premises;
    const Ty* want = rhs.get();
    while (want->kind == Ty::Kind::RCons) {
      std::optional<TyRef> got = ty_lookup(want->ident, *lhs);
      if (!got) return std::nullopt;
      std::optional<SubtypeTrace> field = derive(delta, gamma, sigma, *got, want->a);
      if (!field) return std::nullopt;
      premises.push_back(*field);
      want = want->b.get();
    }
    return SubtypeTrace{"ST-Record-1/2/3", conclusion_of(*lhs, *rhs), std::move(premises)};
  }
  if (lhs->kind == Ty::Kind::Prod && rhs->kind == Ty::Kind::Prod) {
    if (lhs->ident != rhs->ident) return std::nullopt;
    std::optional<SubtypeTrace> dom = derive(delta, gamma, sigma, rhs->a, lhs->a);
    if (!dom) return std::nullopt;
    TypingCtx extended = gamma.updated(rhs->ident, rhs->a);
    std::optional<SubtypeTrace> cod = derive(delta, extended, sigma, lhs->b, rhs->b);
    if (!cod) return std::nullopt;
    return SubtypeTrace{"ST-App", conclusion_of(*lhs, *rhs), {*dom, *cod}};
  }
  if (lhs->kind == Ty::Kind::Tagged && rhs->kind == Ty::Kind::Tagged) {
    return derive_tagged(gamma, sigma, lhs->name, rhs->name);
  }
  if (lhs->kind == Ty::Kind::TagExt && rhs->kind == Ty::Kind::TagExt) {
    if (!equal(lhs->a, rhs->a)) return std::nullopt;
    std::optional<SubtypeTrace> parents =
        derive_tagged(gamma, sigma, lhs->name, rhs->name);
    if (!parents) return std::nullopt;
    return SubtypeTrace{"ST-Tag-2", conclusion_of(*lhs, *rhs), {*parents}};
  }
  if (lhs->kind == Ty::Kind::TagExt && rhs->kind == Ty::Kind::Tag) {
    if (!equal(lhs->a, rhs->a)) return std::nullopt;
    return SubtypeTrace{"ST-Tag-3", conclusion_of(*lhs, *rhs), {}};
  }
  return std::nullopt;
}

void render_into(const SubtypeTrace& t, std::size_t depth, std::ostringstream& os) {
  for (std::size_t i = 0; i < depth; ++i) os << "  ";
  os << t.rule << ": " << t.conclusion << '\n';
  for (const SubtypeTrace& p : t.premises) render_into(p, depth + 1, os);
}

}  // namespace

std::optional<SubtypeTrace> subtype_derivation(const SubtypeQuery& q) {
  return derive(q.delta, q.gamma, q.sigma, q.lhs, q.rhs);
}

std::string render(const SubtypeTrace& trace) {
  std::ostringstream os;
  render_into(trace, 0, os);
  return os.str();
}

}  // namespace tagcalc
