// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/dynamics.hpp"

#include <functional>
#include <sstream>
#include <utility>

#include "tagcalc/pretty.hpp"
#include "tagcalc/substitution.hpp"

namespace tagcalc {

bool is_value(const Store& store, const Tm& e) {
  switch (e.kind) {
    case Tm::Kind::Unit:
    case Tm::Kind::Lam:
    case Tm::Kind::RNil:
      return true;
    case Tm::Kind::Name:
      return e.name->kind == Name::Kind::Tag && store_contains(e.name->tag, store);
    case Tm::Kind::New:
    case Tm::Kind::Fold:
      return is_value(store, *e.a);
    case Tm::Kind::RCons:
      return is_value(store, *e.a) && record_tm(*e.b) && is_value(store, *e.b);
    case Tm::Kind::Pair:
      return is_value(store, *e.a) && is_value(store, *e.b);
    default:
      return false;
  }
}

namespace {

StepResult stepped(Store store, TmRef term, std::string rule,
                   std::optional<TagAlloc> alloc = std::nullopt) {
  return {StepResult::Status::Stepped, std::move(store), std::move(term), std::move(rule),
          std::move(alloc), {}};
}

StepResult stuck(std::string reason) {
  return {StepResult::Status::Stuck, {}, nullptr, {}, std::nullopt, std::move(reason)};
}

StepResult value_result() {
  return {StepResult::Status::Value, {}, nullptr, {}, std::nullopt, {}};
}

// Steps inside a subterm and rebuilds the surrounding node, chaining the
// congruence rule name in front of the inner one.
StepResult congruence(const Store& store, const TmRef& inner, const char* rule,
                      const std::function<TmRef(TmRef)>& rebuild) {
  StepResult r = step(store, inner);
  if (r.status == StepResult::Status::Stepped) {
    return stepped(std::move(r.store), rebuild(std::move(r.term)),
                   std::string(rule) + "/" + r.rule, std::move(r.alloc));
  }
  if (r.status == StepResult::Status::Stuck) return r;
  return stuck("no rule applies");
}

}  // namespace

StepResult step(const Store& store, const TmRef& e) {
  if (is_value(store, *e)) return value_result();

  switch (e->kind) {
    case Tm::Kind::NewTag: {
      auto [c, bumped] = fresh_tag(store);
      Store out = store_extend_root(c, bumped);
      return stepped(std::move(out), tm_name(name_tag(c)), "r_cls",
                     TagAlloc{c, e->type, std::nullopt});
    }
    case Tm::Kind::SubTag: {
      if (e->name->kind != Name::Kind::Tag) return stuck("open name in SubTag parent");
      TagId parent = e->name->tag;
      if (!path_of(parent, store)) return stuck("SubTag parent not in store");
      auto [c, bumped] = fresh_tag(store);
      Store out = store_extend_child(c, parent, bumped);
      return stepped(std::move(out), tm_name(name_tag(c)), "r_ccls",
                     TagAlloc{c, e->type, parent});
    }
    case Tm::Kind::New:
      return congruence(store, e->a, "r_new",
                        [&](TmRef inner) { return tm_new(e->name, std::move(inner)); });
    case Tm::Kind::Match: {
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_match", [&](TmRef inner) {
          return tm_match(std::move(inner), e->name, e->ident, e->b, e->c);
        });
      }
      if (e->a->kind != Tm::Kind::New) return stuck("Match scrutinee is not a tagged value");
      if (e->a->name->kind != Name::Kind::Tag) return stuck("open name in Match scrutinee tag");
      if (e->name->kind != Name::Kind::Tag) return stuck("open name in Match pattern tag");
      std::optional<Path> p = path_of(e->a->name->tag, store);
      if (!p) return stuck("Match scrutinee tag not in store");
      if (path_contains(e->name->tag, *p)) {
        return stepped(store, subst_tm(e->ident, e->a, e->b), "r_matchsuc");
      }
      return stepped(store, e->c, "r_matchfail");
    }
    case Tm::Kind::Extract: {
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_untag1",
                          [](TmRef inner) { return tm_extract(std::move(inner)); });
      }
      if (e->a->kind != Tm::Kind::New) return stuck("Extract of non-New value");
      return stepped(store, e->a->a, "r_untag2");
    }
    case Tm::Kind::App: {
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_app1",
                          [&](TmRef inner) { return tm_app(std::move(inner), e->b); });
      }
      if (!is_value(store, *e->b)) {
        return congruence(store, e->b, "r_app2",
                          [&](TmRef inner) { return tm_app(e->a, std::move(inner)); });
      }
      if (e->a->kind != Tm::Kind::Lam) return stuck("application of a non-function value");
      return stepped(store, subst_tm(e->a->ident, e->b, e->a->a), "r_appabs");
    }
    case Tm::Kind::RCons: {
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_rcdhead", [&](TmRef inner) {
          return tm_rcons(e->ident, std::move(inner), e->b);
        });
      }
      return congruence(store, e->b, "r_rcdtail", [&](TmRef inner) {
        return tm_rcons(e->ident, e->a, std::move(inner));
      });
    }
    case Tm::Kind::Proj: {
      if (!is_value(store, *e->a)) return stuck("projection subject is not a value");
      if (!record_tm(*e->a)) return stuck("projection from a non-record value");
      std::optional<TmRef> field = tm_lookup(e->ident, *e->a);
      if (!field) return stuck("projection label missing");
      return stepped(store, *field, "r_projrcd");
    }
    case Tm::Kind::Let: {
      if (is_value(store, *e->a)) {
        return stepped(store, subst_tm(e->ident, e->a, e->b), "r_letv");
      }
      return congruence(store, e->a, "r_let", [&](TmRef inner) {
        return tm_let(e->ident, std::move(inner), e->b);
      });
    }
    case Tm::Kind::Fix: {
      if (e->a->kind == Tm::Kind::Lam) {
        return stepped(store, subst_tm(e->a->ident, e, e->a->a), "r_fixb");
      }
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_fix",
                          [](TmRef inner) { return tm_fix(std::move(inner)); });
      }
      return stuck("Fix of a non-function value");
    }
    case Tm::Kind::Fold:
      return congruence(store, e->a, "r_fld",
                        [&](TmRef inner) { return tm_fold(e->type, std::move(inner)); });
    case Tm::Kind::Unfold: {
      if (e->a->kind == Tm::Kind::Fold && is_value(store, *e->a->a)) {
        return stepped(store, e->a->a, "r_unfldfld");
      }
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_unfld",
                          [](TmRef inner) { return tm_unfold(std::move(inner)); });
      }
      return stuck("Unfold of a non-Fold value");
    }
    case Tm::Kind::Pair: {
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_pair1",
                          [&](TmRef inner) { return tm_pair(std::move(inner), e->b); });
      }
      return congruence(store, e->b, "r_pair2",
                        [&](TmRef inner) { return tm_pair(e->a, std::move(inner)); });
    }
    case Tm::Kind::Fst: {
      if (e->a->kind == Tm::Kind::Pair && is_value(store, *e->a)) {
        return stepped(store, e->a->a, "r_pairv1");
      }
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_proj1",
                          [](TmRef inner) { return tm_fst(std::move(inner)); });
      }
      return stuck("Fst of a non-pair value");
    }
    case Tm::Kind::Snd: {
      if (e->a->kind == Tm::Kind::Pair && is_value(store, *e->a)) {
        return stepped(store, e->a->b, "r_pairv2");
      }
      if (!is_value(store, *e->a)) {
        return congruence(store, e->a, "r_proj2",
                          [](TmRef inner) { return tm_snd(std::move(inner)); });
      }
      return stuck("Snd of a non-pair value");
    }
    case Tm::Kind::Name:
      if (e->name->kind == Name::Kind::Tag) return stuck("tag not in store");
      return stuck("open name");
    case Tm::Kind::Unit:
    case Tm::Kind::Lam:
    case Tm::Kind::RNil:
      return value_result();  // unreachable: handled by the is_value gate
  }
  return stuck("no rule applies");
}

EvalResult evaluate(Store store, TmRef e, std::size_t fuel) {
  EvalResult out;
  std::size_t steps = 0;
  for (;;) {
    StepResult r = step(store, e);
    if (r.status == StepResult::Status::Value) {
      out.status = EvalResult::Status::Value;
      break;
    }
    if (r.status == StepResult::Status::Stuck) {
      out.status = EvalResult::Status::Stuck;
      out.stuck_reason = r.reason;
      break;
    }
    if (steps == fuel) {
      out.status = EvalResult::Status::OutOfFuel;
      break;
    }
    bool changed = r.alloc.has_value();
    store = std::move(r.store);
    e = std::move(r.term);
    out.trace.push_back(TraceEntry{r.rule, e, store, changed});
    ++steps;
  }
  out.store = std::move(store);
  out.term = std::move(e);
  return out;
}

std::string render_trace(const TmRef& initial, const Store& initial_store,
                         const EvalResult& result) {
  std::ostringstream os;
  os << "0: init  e := " << pretty(initial) << "  store :=\n" << store_dump(initial_store);
  std::size_t k = 1;
  for (const TraceEntry& entry : result.trace) {
    os << k << ": " << entry.rule << "  e := " << pretty(entry.term);
    if (entry.store_changed) {
      os << "  store :=\n" << store_dump(entry.store);
    } else {
      os << '\n';
    }
    ++k;
  }
  return os.str();
}

}  // namespace tagcalc
