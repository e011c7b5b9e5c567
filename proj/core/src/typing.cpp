// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/typing.hpp"

#include <sstream>

#include "tagcalc/pretty.hpp"
#include "tagcalc/substitution.hpp"
#include "tagcalc/subtype.hpp"

namespace tagcalc {

std::string to_string(TypeError::Kind kind) {
  switch (kind) {
    case TypeError::Kind::UnboundVariable: return "UnboundVariable";
    case TypeError::Kind::UnboundTag: return "UnboundTag";
    case TypeError::Kind::NotAFunction: return "NotAFunction";
    case TypeError::Kind::ArgumentNotAName: return "ArgumentNotAName";
    case TypeError::Kind::ArgumentTypeMismatch: return "ArgumentTypeMismatch";
    case TypeError::Kind::NotATag: return "NotATag";
    case TypeError::Kind::NotTagged: return "NotTagged";
    case TypeError::Kind::NoMutualSupertype: return "NoMutualSupertype";
    case TypeError::Kind::BranchTypesIncomparable: return "BranchTypesIncomparable";
    case TypeError::Kind::NotARecord: return "NotARecord";
    case TypeError::Kind::MissingField: return "MissingField";
    case TypeError::Kind::NotASum: return "NotASum";
    case TypeError::Kind::NotAMu: return "NotAMu";
    case TypeError::Kind::FoldAnnotationMismatch: return "FoldAnnotationMismatch";
    case TypeError::Kind::IllFormedType: return "IllFormedType";
    case TypeError::Kind::FirstComponentNotAName: return "FirstComponentNotAName";
  }
  return "UnknownError";
}

std::string render(const TypeError& err) {
  std::ostringstream os;
  os << to_string(err.kind) << " @ root";
  for (std::size_t i : err.path) os << '.' << i;
  os << ": " << err.detail;
  return os.str();
}

namespace {

class Synthesizer {
 public:
  explicit Synthesizer(const TagCtx& sigma) : sigma_(sigma) {}

  TypeResult synth(const TypingCtx& gamma, const TmRef& e) {
    switch (e->kind) {
      case Tm::Kind::Unit:
        return ty_top();
      case Tm::Kind::Name:
        return synth_name(gamma, *e->name);
      case Tm::Kind::NewTag: {
        if (!wellformed_ty(*e->type)) return ill_formed(*e->type);
        return ty_tag(e->type);
      }
      case Tm::Kind::SubTag: {
        if (!wellformed_ty(*e->type)) return ill_formed(*e->type);
        TypeResult parent = synth_name(gamma, *e->name);
        if (!parent.ok()) return parent;
        const Ty& pt = *parent.type();
        if (pt.kind != Ty::Kind::Tag && pt.kind != Ty::Kind::TagExt) {
          return err(TypeError::Kind::NotATag,
                     "expected a tag type for the parent, got " + pretty(pt));
        }
        if (!subtype_check(AmberEnv{}, gamma, sigma_, *e->type, *pt.a)) {
          return err(TypeError::Kind::ArgumentTypeMismatch,
                     "subtag body " + pretty(e->type) + " is not a subtype of " + pretty(pt.a));
        }
        return ty_tag_ext(e->type, e->name);
      }
      case Tm::Kind::New: {
        TypeResult tag = synth_name(gamma, *e->name);
        if (!tag.ok()) return tag;
        const Ty& tt = *tag.type();
        if (tt.kind != Ty::Kind::Tag && tt.kind != Ty::Kind::TagExt) {
          return err(TypeError::Kind::NotATag,
                     "expected a tag type for New, got " + pretty(tt));
        }
        TypeResult payload = child(gamma, e->a, 0);
        if (!payload.ok()) return payload;
        if (!subtype_check(AmberEnv{}, gamma, sigma_, *payload.type(), *tt.a)) {
          return err(TypeError::Kind::ArgumentTypeMismatch,
                     "expected " + pretty(tt.a) + ", got " + pretty(payload.type()));
        }
        return ty_tagged(e->name);
      }
      case Tm::Kind::Match: {
        TypeResult scrut = child(gamma, e->a, 0);
        if (!scrut.ok()) return scrut;
        const Ty& st = *scrut.type();
        if (st.kind != Ty::Kind::Tagged) {
          return err(TypeError::Kind::NotTagged,
                     "match scrutinee has type " + pretty(st) + ", which is not Tagged");
        }
        if (!mutual_supertype(gamma, sigma_, *e->name, *st.name)) {
          return err(TypeError::Kind::NoMutualSupertype,
                     "Tagged(" + pretty(e->name) + ") and Tagged(" + pretty(st.name) +
                         ") share no supertype");
        }
        TypingCtx hit_ctx = gamma.updated(e->ident, ty_tagged(e->name));
        TypeResult hit = child(hit_ctx, e->b, 1);
        if (!hit.ok()) return hit;
        TypeResult miss = child(gamma, e->c, 2);
        if (!miss.ok()) return miss;
        if (subtype_check(AmberEnv{}, gamma, sigma_, *hit.type(), *miss.type())) {
          return miss.type();
        }
        if (subtype_check(AmberEnv{}, gamma, sigma_, *miss.type(), *hit.type())) {
          return hit.type();
        }
        return err(TypeError::Kind::BranchTypesIncomparable,
                   "branch types " + pretty(hit.type()) + " and " + pretty(miss.type()) +
                       " are not comparable");
      }
      case Tm::Kind::Extract: {
        TypeResult inner = child(gamma, e->a, 0);
        if (!inner.ok()) return inner;
        const Ty& it = *inner.type();
        if (it.kind != Ty::Kind::Tagged) {
          return err(TypeError::Kind::NotTagged,
                     "Extract expects a Tagged value, got " + pretty(it));
        }
        std::optional<TyRef> tag = name_tag_type(gamma, sigma_, *it.name);
        if (!tag || ((*tag)->kind != Ty::Kind::Tag && (*tag)->kind != Ty::Kind::TagExt)) {
          return err(TypeError::Kind::NotATag,
                     "name " + pretty(it.name) + " does not denote a tag");
        }
        return (*tag)->a;
      }
      case Tm::Kind::Lam: {
        if (!wellformed_ty(*e->type)) return ill_formed(*e->type);
        TypeResult body = child(gamma.updated(e->ident, e->type), e->a, 0);
        if (!body.ok()) return body;
        return ty_prod(e->ident, e->type, body.type());
      }
      case Tm::Kind::App: {
        TypeResult fn = child(gamma, e->a, 0);
        if (!fn.ok()) return fn;
        const Ty& ft = *fn.type();
        if (ft.kind != Ty::Kind::Prod) {
          return err(TypeError::Kind::NotAFunction,
                     "application of a non-function of type " + pretty(ft));
        }
        TypeResult arg = child(gamma, e->b, 1);
        if (!arg.ok()) return arg;
        if (!subtype_check(AmberEnv{}, gamma, sigma_, *arg.type(), *ft.a)) {
          return err(TypeError::Kind::ArgumentTypeMismatch,
                     "expected " + pretty(ft.a) + ", got " + pretty(arg.type()));
        }
        if (free_vars_ty(*ft.b).count(ft.ident) != 0) {
          if (e->b->kind != Tm::Kind::Name) {
            return err(TypeError::Kind::ArgumentNotAName,
                       "argument must be a name: the codomain " + pretty(ft.b) +
                           " depends on " + ft.ident);
          }
          return subst_name_ty(e->b->name, ft.ident, ft.b);
        }
        return ft.b;
      }
      case Tm::Kind::Pair: {
        TypeResult left = child(gamma, e->a, 0);
        if (!left.ok()) return left;
        TypeResult right = child(gamma, e->b, 1);
        if (!right.ok()) return right;
        return ty_sum(fresh_binder(*right.type()), left.type(), right.type());
      }
      case Tm::Kind::Fst: {
        TypeResult inner = child(gamma, e->a, 0);
        if (!inner.ok()) return inner;
        const Ty& it = *inner.type();
        if (it.kind != Ty::Kind::Sum) {
          return err(TypeError::Kind::NotASum, "Fst expects a Sum, got " + pretty(it));
        }
        return it.a;
      }
      case Tm::Kind::Snd: {
        TypeResult inner = child(gamma, e->a, 0);
        if (!inner.ok()) return inner;
        const Ty& it = *inner.type();
        if (it.kind != Ty::Kind::Sum) {
          return err(TypeError::Kind::NotASum, "Snd expects a Sum, got " + pretty(it));
        }
        if (free_vars_ty(*it.b).count(it.ident) != 0) {
          if (e->a->kind != Tm::Kind::Name) {
            return err(TypeError::Kind::FirstComponentNotAName,
                       "Snd needs a name to substitute for " + it.ident + " in " +
                           pretty(it.b));
          }
          return subst_name_ty(name_fst(e->a->name), it.ident, it.b);
        }
        return it.b;
      }
      case Tm::Kind::RNil:
        return ty_rnil();
      case Tm::Kind::RCons: {
        if (!record_tm(*e->b)) {
          return err(TypeError::Kind::NotARecord,
                     "record tail is not a record term: " + pretty(e->b));
        }
        TypeResult head = child(gamma, e->a, 0);
        if (!head.ok()) return head;
        TypeResult tail = child(gamma, e->b, 1);
        if (!tail.ok()) return tail;
        TyRef result = ty_rcons(e->ident, head.type(), tail.type());
        if (!wellformed_ty(*result)) return ill_formed(*result);
        return result;
      }
      case Tm::Kind::Proj: {
        TypeResult rec = child(gamma, e->a, 0);
        if (!rec.ok()) return rec;
        if (!record_ty(*rec.type())) {
          return err(TypeError::Kind::NotARecord,
                     "projection from a non-record of type " + pretty(rec.type()));
        }
        std::optional<TyRef> field = ty_lookup(e->ident, *rec.type());
        if (!field) {
          return err(TypeError::Kind::MissingField,
                     "no field " + e->ident + " in " + pretty(rec.type()));
        }
        return *field;
      }
      case Tm::Kind::Let: {
        TypeResult bound = child(gamma, e->a, 0);
        if (!bound.ok()) return bound;
        return child(gamma.updated(e->ident, bound.type()), e->b, 1);
      }
      case Tm::Kind::Fix: {
        TypeResult inner = child(gamma, e->a, 0);
        if (!inner.ok()) return inner;
        const Ty& it = *inner.type();
        if (it.kind != Ty::Kind::Prod) {
          return err(TypeError::Kind::NotAFunction, "Fix expects a function, got " + pretty(it));
        }
        if (!equal(it.a, it.b)) {
          return err(TypeError::Kind::ArgumentTypeMismatch,
                     "Fix needs equal domain and codomain, got " + pretty(it));
        }
        return it.b;
      }
      case Tm::Kind::Fold: {
        if (e->type->kind != Ty::Kind::Mu) {
          return err(TypeError::Kind::NotAMu,
                     "Fold annotation must be a mu type, got " + pretty(e->type));
        }
        if (!wellformed_ty(*e->type)) return ill_formed(*e->type);
        TyRef unrolled = subst_tyvar(e->type->ident, e->type, e->type->a);
        TypeResult body = child(gamma, e->a, 0);
        if (!body.ok()) return body;
        if (!subtype_check(AmberEnv{}, gamma, sigma_, *body.type(), *unrolled)) {
          return err(TypeError::Kind::FoldAnnotationMismatch,
                     "expected " + pretty(unrolled) + ", got " + pretty(body.type()));
        }
        return e->type;
      }
      case Tm::Kind::Unfold: {
        TypeResult inner = child(gamma, e->a, 0);
        if (!inner.ok()) return inner;
        const Ty& it = *inner.type();
        if (it.kind != Ty::Kind::Mu) {
          return err(TypeError::Kind::NotAMu, "Unfold expects a mu type, got " + pretty(it));
        }
        return subst_tyvar(it.ident, inner.type(), it.a);
      }
    }
    return err(TypeError::Kind::IllFormedType, "unreachable term kind");
  }

 private:
  TypeResult child(const TypingCtx& gamma, const TmRef& e, std::size_t index) {
    path_.push_back(index);
    TypeResult r = synth(gamma, e);
    path_.pop_back();
    return r;
  }

  TypeResult synth_name(const TypingCtx& gamma, const Name& n) {
    switch (n.kind) {
      case Name::Kind::Var: {
        std::optional<TyRef> t = gamma.lookup(n.ident);
        if (!t) return err(TypeError::Kind::UnboundVariable, "variable " + n.ident);
        return *t;
      }
      case Name::Kind::Tag: {
        std::optional<TagBinding> b = sigma_.lookup(n.tag);
        if (!b) return err(TypeError::Kind::UnboundTag, "tag #" + std::to_string(n.tag.value));
        if (b->parent) return ty_tag_ext(b->body, b->parent);
        return ty_tag(b->body);
      }
      case Name::Kind::Fst: {
        TypeResult inner = synth_name(gamma, *n.inner);
        if (!inner.ok()) return inner;
        if (inner.type()->kind != Ty::Kind::Sum) {
          return err(TypeError::Kind::NotASum,
                     "Fst(" + pretty(*n.inner) + ") needs a Sum, got " + pretty(inner.type()));
        }
        return inner.type()->a;
      }
      case Name::Kind::Unfold: {
        TypeResult inner = synth_name(gamma, *n.inner);
        if (!inner.ok()) return inner;
        if (inner.type()->kind != Ty::Kind::Mu) {
          return err(TypeError::Kind::NotAMu,
                     "Unfold(" + pretty(*n.inner) + ") needs a mu type, got " +
                         pretty(inner.type()));
        }
        const Ty& mu = *inner.type();
        return subst_tyvar(mu.ident, inner.type(), mu.a);
      }
    }
    return err(TypeError::Kind::UnboundVariable, "unreachable name kind");
  }

  // Binder for a synthesized Sum: "x" unless that would capture in the
  // second component's type.
  static std::string fresh_binder(const Ty& second) {
    std::set<std::string> used = free_vars_ty(second);
    if (used.count("x") == 0) return "x";
    for (std::size_t i = 0;; ++i) {
      std::string candidate = "x" + std::to_string(i);
      if (used.count(candidate) == 0) return candidate;
    }
  }

  TypeResult err(TypeError::Kind kind, std::string detail) {
    return TypeError{kind, std::move(detail), path_};
  }

  TypeResult ill_formed(const Ty& t) {
    return err(TypeError::Kind::IllFormedType, pretty(t) + " is not wellformed");
  }

  const TagCtx& sigma_;
  std::vector<std::size_t> path_;
};

}  // namespace

TypeResult synthesize(const TypingCtx& gamma, const TagCtx& sigma, const TmRef& e) {
  Synthesizer s(sigma);
  return s.synth(gamma, e);
}

std::optional<TypeError> check_against(const TypingCtx& gamma, const TagCtx& sigma,
                                       const TmRef& e, const TyRef& want) {
  TypeResult got = synthesize(gamma, sigma, e);
  if (!got.ok()) return got.error();
  if (!subtype_check(AmberEnv{}, gamma, sigma, *got.type(), *want)) {
    return TypeError{TypeError::Kind::ArgumentTypeMismatch,
                     "expected " + pretty(want) + ", got " + pretty(got.type()),
                     {}};
  }
  return std::nullopt;
}

TypeResult type_letrec(const TypingCtx& gamma, const TagCtx& sigma, const std::string& binder,
                       const TyRef& annot, const TmRef& bound, const TmRef& body) {
  return synthesize(gamma, sigma, tm_letrec(binder, annot, bound, body));
}

}  // namespace tagcalc
