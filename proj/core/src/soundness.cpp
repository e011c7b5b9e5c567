// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/soundness.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tagcalc/pretty.hpp"
#include "tagcalc/typing.hpp"

namespace tagcalc {

bool subcontext(const TagCtx& inner, const TagCtx& outer) {
  for (const auto& [id, binding] : inner) {
    std::optional<TagBinding> other = outer.lookup(TagId{id});
    if (!other) return false;
    if (!equal(binding.body, other->body)) return false;
    if (!equal(binding.parent, other->parent)) return false;
  }
  return true;
}

bool storecontext_check(const TagCtx& sigma, const Store& store) {
  if (sigma.size() != store.entries().size()) return false;
  for (const Path& p : store.entries()) {
    if (p.tags.empty()) return false;
    std::optional<TagBinding> b = sigma.lookup(p.tags.front());
    if (!b) return false;
    if (p.tags.size() == 1) {
      if (b->parent) return false;
    } else {
      if (!b->parent || b->parent->kind != Name::Kind::Tag) return false;
      if (!(b->parent->tag == p.tags[1])) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Type enumeration
// ---------------------------------------------------------------------------

namespace {

std::size_t ty_depth(const Ty& t) {
  std::size_t d = 0;
  if (t.a) d = std::max(d, ty_depth(*t.a));
  if (t.b) d = std::max(d, ty_depth(*t.b));
  if (t.kind == Ty::Kind::Tagged) d = std::max(d, std::size_t{1});
  return d + 1;
}

}  // namespace

std::vector<TyRef> enumerate_types(std::size_t tag_count,
                                   const std::vector<std::string>& labels, std::size_t depth) {
  std::vector<TyRef> out;
  std::unordered_set<std::string> seen;
  auto push = [&](const TyRef& t) {
    if (ty_depth(*t) > depth || !wellformed_ty(*t)) return;
    std::string key = pretty(t);
    if (seen.insert(std::move(key)).second) out.push_back(t);
  };

  if (depth == 0) return out;
  push(ty_top());
  push(ty_var("t"));
  push(ty_rnil());

  for (std::size_t round = 1; round < depth; ++round) {
    std::size_t before = out.size();
    for (std::size_t k = 0; k < tag_count; ++k) push(ty_tagged(name_tag(TagId{k})));
    push(ty_tag(ty_top()));
    for (std::size_t k = 0; k < tag_count; ++k) {
      push(ty_tag_ext(ty_top(), name_tag(TagId{k})));
    }
    // Snapshot: constructions draw from the universe as of this round.
    std::vector<TyRef> cur(out.begin(), out.end());
    for (const std::string& label : labels) {
      for (const TyRef& head : cur) {
        for (const TyRef& tail : cur) {
          if (!record_ty(*tail)) continue;
          if (ty_lookup(label, *tail)) continue;
          push(ty_rcons(label, head, tail));
        }
      }
    }
    for (const TyRef& a : cur) {
      for (const TyRef& b : cur) {
        push(ty_prod("x", a, b));
        push(ty_sum("x", a, b));
      }
    }
    for (const TyRef& a : cur) push(ty_mu("t", a));
    if (out.size() == before) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Type-directed term generation
// ---------------------------------------------------------------------------

namespace {

struct TagInfo {
  TagId id;
  TyRef body;
  std::optional<TagId> parent;
};

class Generator {
 public:
  Generator(std::uint64_t seed, std::size_t depth)
      : rng_(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL), depth_(depth) {}

  TestCase run(std::uint64_t seed) {
    build_forest();
    TestCase out;
    out.sigma = sigma_;
    out.store = store_;
    out.seed = seed;
    for (int attempt = 0; attempt < 16; ++attempt) {
      vars_.clear();
      gamma_ = TypingCtx{};
      next_var_ = 0;
      TmRef term = gen_term(depth_);
      // Prefer terms with actual reduction work; plain values make the
      // progress and preservation checks vacuous.
      for (int reroll = 0; reroll < 4 && is_value(store_, *term); ++reroll) {
        vars_.clear();
        gamma_ = TypingCtx{};
        term = gen_term(depth_);
      }
      TypeResult r = synthesize(TypingCtx{}, sigma_, term);
      if (r.ok()) {
        out.term = term;
        out.ty = r.type();
        return out;
      }
    }
    out.term = tm_unit();
    out.ty = ty_top();
    return out;
  }

 private:
  std::uint64_t rand(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool chance(std::uint64_t percent) { return rand(100) < percent; }

  // -- tag forest -----------------------------------------------------------

  TyRef body_pool(std::uint64_t i) {
    switch (i % 4) {
      case 0: return ty_top();
      case 1: return ty_rnil();
      case 2: return ty_rcons("f", ty_top(), ty_rnil());
      default: return ty_rcons("f", ty_top(), ty_rcons("g", ty_top(), ty_rnil()));
    }
  }

  // A strict-or-equal subtype of the parent body, to satisfy CCls-I.
  TyRef sub_body(const TyRef& parent) {
    switch (parent->kind) {
      case Ty::Kind::RNil:
        return body_pool(1 + rand(3));
      case Ty::Kind::RCons:
        if (ty_lookup("g", *parent)) return parent;
        return chance(50) ? parent : ty_rcons("f", ty_top(), ty_rcons("g", ty_top(), ty_rnil()));
      default:
        return parent;
    }
  }

  void add_tag(TyRef body, std::optional<TagId> parent) {
    auto [id, bumped] = fresh_tag(store_);
    store_ = parent ? store_extend_child(id, *parent, bumped) : store_extend_root(id, bumped);
    sigma_ = sigma_.updated(id, TagBinding{body, parent ? name_tag(*parent) : nullptr});
    tags_.push_back(TagInfo{id, std::move(body), parent});
  }

  void build_forest() {
    std::size_t roots = 1 + rand(2);
    for (std::size_t r = 0; r < roots; ++r) {
      TyRef body = body_pool(rand(4));
      add_tag(body, std::nullopt);
      TagId root = tags_.back().id;
      std::size_t children = rand(3);
      for (std::size_t c = 0; c < children; ++c) {
        add_tag(sub_body(body), root);
        if (chance(40)) {
          const TagInfo& child = tags_.back();
          add_tag(sub_body(child.body), child.id);
        }
      }
    }
  }

  const TagInfo& random_tag() { return tags_[rand(tags_.size())]; }

  std::vector<TagId> chain_of(TagId c) const {
    std::vector<TagId> chain{c};
    const TagInfo* cur = find(c);
    while (cur && cur->parent) {
      chain.push_back(*cur->parent);
      cur = find(*cur->parent);
    }
    return chain;
  }

  const TagInfo* find(TagId c) const {
    for (const TagInfo& t : tags_) {
      if (t.id == c) return &t;
    }
    return nullptr;
  }

  // Any tag in the same tree shares the root, so Match typechecks.
  TagId related_tag(TagId c) {
    TagId root = chain_of(c).back();
    std::vector<TagId> tree;
    for (const TagInfo& t : tags_) {
      std::vector<TagId> chain = chain_of(t.id);
      if (std::find(chain.begin(), chain.end(), root) != chain.end()) tree.push_back(t.id);
    }
    return tree[rand(tree.size())];
  }

  std::vector<TagId> descendants_or_self(TagId c) {
    std::vector<TagId> out;
    for (const TagInfo& t : tags_) {
      std::vector<TagId> chain = chain_of(t.id);
      if (std::find(chain.begin(), chain.end(), c) != chain.end()) out.push_back(t.id);
    }
    return out;
  }

  // -- closed values of a given type ---------------------------------------

  TmRef value_of(const TyRef& t) {
    switch (t->kind) {
      case Ty::Kind::Top:
        return tm_unit();
      case Ty::Kind::RNil:
        return tm_rnil();
      case Ty::Kind::RCons: {
        std::vector<std::pair<std::string, TmRef>> fields;
        const Ty* cur = t.get();
        while (cur->kind == Ty::Kind::RCons) {
          fields.emplace_back(cur->ident, value_of(cur->a));
          cur = cur->b.get();
        }
        TmRef out = tm_rnil();
        for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
          out = tm_rcons(it->first, it->second, out);
        }
        return out;
      }
      case Ty::Kind::Tagged:
        if (t->name->kind == Name::Kind::Tag) {
          if (const TagInfo* info = find(t->name->tag)) {
            return tm_new(t->name, value_of(info->body));
          }
        }
        return tm_unit();
      case Ty::Kind::Prod:
        return tm_lam(t->ident, t->a, value_of(t->b));
      case Ty::Kind::Sum:
        return tm_pair(value_of(t->a), value_of(t->b));
      case Ty::Kind::Mu:
        return tm_fold(t, value_of(t->a));  // pool bodies never use the binder
      case Ty::Kind::Tag:
        for (const TagInfo& info : tags_) {
          if (!info.parent && equal(info.body, t->a)) return tm_name(name_tag(info.id));
        }
        return tm_unit();
      case Ty::Kind::TagExt:
        for (const TagInfo& info : tags_) {
          if (info.parent && equal(info.body, t->a) &&
              equal(name_tag(*info.parent), t->name)) {
            return tm_name(name_tag(info.id));
          }
        }
        return tm_unit();
      case Ty::Kind::Var:
        return tm_unit();
    }
    return tm_unit();
  }

  // Lam domains and Fold bodies come from this pool; everything in it is
  // realizable by value_of.
  TyRef dom_pool() {
    switch (rand(7)) {
      case 0: return ty_top();
      case 1: return ty_rnil();
      case 2: return ty_rcons("f", ty_top(), ty_rnil());
      case 3: return ty_sum("x", ty_top(), ty_top());
      case 4: return ty_prod("x", ty_top(), ty_top());
      case 5: return ty_mu("t", ty_top());
      default: {
        const TagInfo& info = random_tag();
        return ty_tagged(name_tag(info.id));
      }
    }
  }

  // -- terms ----------------------------------------------------------------

  std::string fresh_var() { return "v" + std::to_string(next_var_++); }

  void bind(const std::string& x, const TyRef& t) {
    gamma_ = gamma_.updated(x, t);
    vars_.emplace_back(x, t);
  }

  void unbind(const std::string& x, const TypingCtx& saved) {
    gamma_ = saved;
    vars_.pop_back();
    (void)x;
  }

  /// A term whose synthesized type is a subtype of want.
  TmRef term_of(const TyRef& want, std::size_t d) {
    if (d <= 1 || chance(25)) return value_of(want);
    switch (rand(4)) {
      case 0: {  // let around it
        std::string x = fresh_var();
        TmRef bound = gen_term(d - 1);
        TypeResult bt = synthesize(gamma_, sigma_, bound);
        if (!bt.ok()) return value_of(want);
        TypingCtx saved = gamma_;
        bind(x, bt.type());
        TmRef body = term_of(want, d - 1);
        unbind(x, saved);
        return tm_let(x, bound, body);
      }
      case 1: {  // apply a constant function
        std::string x = fresh_var();
        TypingCtx saved = gamma_;
        bind(x, ty_top());
        TmRef body = term_of(want, d - 1);
        unbind(x, saved);
        return tm_app(tm_lam(x, ty_top(), body), tm_unit());
      }
      case 2: {  // extract from a tag whose body matches
        for (const TagInfo& info : tags_) {
          if (equal(info.body, want)) {
            return tm_extract(tm_new(name_tag(info.id), term_of(info.body, d - 1)));
          }
        }
        return value_of(want);
      }
      default:
        return value_of(want);
    }
  }

  // Terms whose synthesized type is identical in every reachable reduct.
  // Pair components must come from this class: Sum types are invariant (no
  // subtyping rule), so a component whose principal type shrinks across a
  // step would break the algorithmic preservation re-check.
  TmRef stable_term(std::size_t d) {
    if (d <= 1) return value_of(dom_pool());
    switch (rand(5)) {
      case 0:
        return tm_newtag(body_pool(rand(4)));
      case 1: {
        const TagInfo& info = random_tag();
        return tm_subtag(sub_body(info.body), name_tag(info.id));
      }
      case 2:
        return tm_pair(stable_term(d - 1), stable_term(d - 1));
      case 3: {
        const TagInfo& info = random_tag();
        return tm_new(name_tag(info.id), value_of(info.body));
      }
      default:
        return value_of(dom_pool());
    }
  }

  TmRef gen_match(std::size_t d) {
    const TagInfo& scrut_tag = random_tag();
    TagId pattern = related_tag(scrut_tag.id);
    TmRef scrutinee = tm_new(name_tag(scrut_tag.id), term_of(scrut_tag.body, d - 1));
    std::string binder = fresh_var();
    switch (rand(3)) {
      case 0: {  // Top-typed branches
        TmRef hit = term_of(ty_top(), d - 2 < 1 ? 1 : d - 2);
        TmRef miss = term_of(ty_top(), d - 2 < 1 ? 1 : d - 2);
        return tm_match(scrutinee, name_tag(pattern), binder, hit, miss);
      }
      case 1: {  // binder flows out of the hit branch
        std::vector<TagId> lows = descendants_or_self(pattern);
        TagId m = lows[rand(lows.size())];
        TmRef miss = value_of(ty_tagged(name_tag(m)));
        return tm_match(scrutinee, name_tag(pattern), binder, tm_name(name_var(binder)), miss);
      }
      default: {  // record branches reconciled by width
        TmRef hit = tm_rcons("f", tm_unit(), tm_rcons("g", tm_unit(), tm_rnil()));
        TmRef miss = tm_rcons("f", tm_unit(), tm_rnil());
        return tm_match(scrutinee, name_tag(pattern), binder, hit, miss);
      }
    }
  }

  TmRef leaf() {
    switch (rand(4)) {
      case 0:
        return tm_unit();
      case 1:
        if (!vars_.empty()) return tm_name(name_var(vars_[rand(vars_.size())].first));
        return tm_unit();
      case 2:
        return tm_name(name_tag(random_tag().id));
      default:
        return tm_rnil();
    }
  }

  TmRef gen_term(std::size_t d) {
    if (d <= 1) return leaf();
    switch (rand(20)) {
      case 0:
        return leaf();
      case 1: {  // New
        const TagInfo& info = random_tag();
        return tm_new(name_tag(info.id), term_of(info.body, d - 1));
      }
      case 2:
      case 3:
      case 4:
      case 5:
      case 6:
        return gen_match(d);
      case 7: {  // Extract
        const TagInfo& info = random_tag();
        return tm_extract(tm_new(name_tag(info.id), term_of(info.body, d - 1)));
      }
      case 8:
        return tm_newtag(body_pool(rand(4)));
      case 9: {  // SubTag
        const TagInfo& info = random_tag();
        return tm_subtag(sub_body(info.body), name_tag(info.id));
      }
      case 10: {  // Lam
        std::string x = fresh_var();
        TyRef dom = dom_pool();
        TypingCtx saved = gamma_;
        bind(x, dom);
        TmRef body = gen_term(d - 1);
        unbind(x, saved);
        return tm_lam(x, dom, body);
      }
      case 11: {  // App; fn and arg sides both get congruence coverage
        std::string x = fresh_var();
        TyRef dom = dom_pool();
        TypingCtx saved = gamma_;
        bind(x, dom);
        TmRef body = gen_term(d - 1);
        unbind(x, saved);
        TmRef fn = tm_lam(x, dom, body);
        switch (rand(3)) {
          case 0: {  // fn position computes first
            std::string g = fresh_var();
            return tm_app(tm_let(g, fn, tm_name(name_var(g))), value_of(dom));
          }
          case 1:  // arg position computes once fn is a value
            return tm_app(fn, term_of(dom, d - 1));
          default:
            return tm_app(fn, value_of(dom));
        }
      }
      case 12: {  // Let
        std::string x = fresh_var();
        TmRef bound = gen_term(d - 1);
        TypeResult bt = synthesize(gamma_, sigma_, bound);
        if (!bt.ok()) return leaf();
        TypingCtx saved = gamma_;
        bind(x, bt.type());
        TmRef body = gen_term(d - 1);
        unbind(x, saved);
        return tm_let(x, bound, body);
      }
      case 13:  // record literal
        if (chance(50)) return tm_rcons("f", gen_term(d - 1), tm_rnil());
        return tm_rcons("f", gen_term(d - 1), tm_rcons("g", gen_term(d - 1), tm_rnil()));
      case 14: {  // Proj over a record variable or a record of values
        for (std::size_t i = vars_.size(); i-- > 0;) {
          if (vars_[i].second->kind == Ty::Kind::RCons) {
            return tm_proj(tm_name(name_var(vars_[i].first)), vars_[i].second->ident);
          }
        }
        TmRef rec = tm_rcons("f", value_of(dom_pool()), tm_rnil());
        return tm_proj(rec, "f");
      }
      case 15:  // pairs: components must be type-stable, see stable_term
        return tm_pair(stable_term(d - 1), stable_term(d - 1));
      case 16:
        return chance(50) ? tm_fst(tm_pair(gen_term(d - 1), gen_term(d - 1)))
                          : tm_snd(tm_pair(gen_term(d - 1), gen_term(d - 1)));
      case 17: {  // fold / unfold
        TyRef body = body_pool(rand(3));
        TyRef mu = ty_mu("t", body);
        TmRef folded = tm_fold(mu, term_of(body, d - 1));
        return chance(50) ? folded : tm_unfold(folded);
      }
      case 18: {  // Fix of a constant function, sometimes behind a let
        TyRef t = dom_pool();
        TmRef fn = tm_lam(fresh_var(), t, value_of(t));
        if (chance(40)) {
          std::string g = fresh_var();
          return tm_fix(tm_let(g, fn, tm_name(name_var(g))));
        }
        return tm_fix(fn);
      }
      default: {  // LetRec derived form
        std::string f = fresh_var();
        TyRef t = dom_pool();
        TypingCtx saved = gamma_;
        bind(f, t);
        TmRef body = gen_term(d - 1);
        unbind(f, saved);
        return tm_letrec(f, t, value_of(t), body);
      }
    }
  }

  std::mt19937_64 rng_;
  std::size_t depth_;
  Store store_;
  TagCtx sigma_;
  std::vector<TagInfo> tags_;
  std::vector<std::pair<std::string, TyRef>> vars_;
  TypingCtx gamma_;
  std::size_t next_var_ = 0;
};

}  // namespace

TestCase gen_typed_term(std::uint64_t seed, std::size_t depth) {
  Generator g(seed, depth);
  return g.run(seed);
}

// ---------------------------------------------------------------------------
// Soundness checks
// ---------------------------------------------------------------------------

namespace {

TagCtx extend_sigma(const TagCtx& sigma, const std::optional<TagAlloc>& alloc) {
  if (!alloc) return sigma;
  return sigma.updated(alloc->id,
                       TagBinding{alloc->body, alloc->parent ? name_tag(*alloc->parent) : nullptr});
}

}  // namespace

CaseReport check_preservation(const TestCase& c) {
  StepResult r = step(c.store, c.term);
  if (r.status == StepResult::Status::Value) return {true, "value (vacuous)", true};
  if (r.status == StepResult::Status::Stuck) {
    return {false, "stuck: " + r.reason, true};
  }
  TagCtx extended = extend_sigma(c.sigma, r.alloc);
  CaseReport report;
  report.subcontext_paper_direction = subcontext(extended, c.sigma);
  if (!subcontext(c.sigma, extended)) {
    return {false, "sigma extension lost a binding", report.subcontext_paper_direction};
  }
  TypeResult t = synthesize(c.gamma, extended, r.term);
  if (!t.ok()) {
    return {false, "post-step term does not typecheck: " + render(t.error()),
            report.subcontext_paper_direction};
  }
  if (!subtype_check(AmberEnv{}, c.gamma, extended, *t.type(), *c.ty)) {
    return {false,
            "type not preserved: " + pretty(t.type()) + " is not a subtype of " + pretty(c.ty),
            report.subcontext_paper_direction};
  }
  if (!storecontext_check(extended, r.store)) {
    return {false, "storecontext broken after step", report.subcontext_paper_direction};
  }
  report.pass = true;
  report.message = "ok (rule " + r.rule + ")";
  return report;
}

CaseReport check_progress(const TestCase& c) {
  if (is_value(c.store, *c.term)) return {true, "value", true};
  StepResult r = step(c.store, c.term);
  if (r.status == StepResult::Status::Stepped) return {true, "steps via " + r.rule, true};
  if (r.status == StepResult::Status::Value) return {true, "value", true};
  return {false, "stuck: " + r.reason, true};
}

TraceCheck check_soundness_trace(const TestCase& c, std::size_t fuel) {
  TraceCheck out;
  TagCtx sigma = c.sigma;
  Store store = c.store;
  TmRef term = c.term;
  for (;;) {
    if (!storecontext_check(sigma, store)) {
      out.storecontext_ok = false;
      out.failure = "storecontext does not hold at step " + std::to_string(out.steps);
      return out;
    }
    if (is_value(store, *term)) return out;
    StepResult r = step(store, term);
    if (r.status == StepResult::Status::Value) return out;
    if (r.status == StepResult::Status::Stuck) {
      out.progress_ok = false;
      out.failure = "stuck at step " + std::to_string(out.steps) + ": " + r.reason;
      return out;
    }
    if (out.steps == fuel) {
      out.out_of_fuel = true;
      return out;
    }
    TagCtx extended = extend_sigma(sigma, r.alloc);
    TypeResult t = synthesize(c.gamma, extended, r.term);
    if (!t.ok()) {
      out.preservation_ok = false;
      out.failure = "post-step term does not typecheck at step " + std::to_string(out.steps) +
                    ": " + render(t.error());
      return out;
    }
    if (!subtype_check(AmberEnv{}, c.gamma, extended, *t.type(), *c.ty)) {
      out.preservation_ok = false;
      out.failure = "type not preserved at step " + std::to_string(out.steps) + ": " +
                    pretty(t.type()) + " vs " + pretty(c.ty);
      return out;
    }
    sigma = extended;
    store = r.store;
    term = r.term;
    ++out.steps;
  }
}

namespace {

const char* kind_name(Tm::Kind k) {
  switch (k) {
    case Tm::Kind::NewTag: return "NewTag";
    case Tm::Kind::SubTag: return "SubTag";
    case Tm::Kind::New: return "New";
    case Tm::Kind::Match: return "Match";
    case Tm::Kind::Extract: return "Extract";
    case Tm::Kind::Lam: return "Lam";
    case Tm::Kind::App: return "App";
    case Tm::Kind::RNil: return "RNil";
    case Tm::Kind::RCons: return "RCons";
    case Tm::Kind::Proj: return "Proj";
    case Tm::Kind::Let: return "Let";
    case Tm::Kind::Fix: return "Fix";
    case Tm::Kind::Fold: return "Fold";
    case Tm::Kind::Unfold: return "Unfold";
    case Tm::Kind::Pair: return "Pair";
    case Tm::Kind::Fst: return "Fst";
    case Tm::Kind::Snd: return "Snd";
    case Tm::Kind::Unit: return "Unit";
    case Tm::Kind::Name: return "Name";
  }
  return "?";
}

void histogram_into(const Tm& e, std::map<std::string, std::size_t>& out) {
  out[kind_name(e.kind)] += 1;
  if (e.a) histogram_into(*e.a, out);
  if (e.b) histogram_into(*e.b, out);
  if (e.c) histogram_into(*e.c, out);
}

}  // namespace

std::map<std::string, std::size_t> construct_histogram(const Tm& e) {
  std::map<std::string, std::size_t> out;
  histogram_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Selftest driver
// ---------------------------------------------------------------------------

namespace {

TagCtx differential_sigma() {
  TagCtx sigma;
  sigma = sigma.updated(TagId{0}, TagBinding{ty_top(), nullptr});
  sigma = sigma.updated(TagId{1}, TagBinding{ty_top(), name_tag(TagId{0})});
  return sigma;
}

struct NegativeControl {
  std::string name;
  TestCase test_case;
};

std::vector<NegativeControl> negative_controls() {
  std::vector<NegativeControl> out;
  // Claimed type has nothing to do with the term.
  {
    TestCase c;
    c.term = tm_newtag(ty_top());
    c.ty = ty_rnil();
    out.push_back({"corrupted-claimed-type", c});
  }
  // Extract result claimed to be a record.
  {
    TestCase c;
    c.sigma = c.sigma.updated(TagId{0}, TagBinding{ty_top(), nullptr});
    c.store = store_extend_root(TagId{0}, Store{});
    c.term = tm_extract(tm_new(name_tag(TagId{0}), tm_unit()));
    c.ty = ty_rnil();
    out.push_back({"corrupted-extract-type", c});
  }
  // Store carries a tag Sigma knows nothing about.
  {
    TestCase c;
    c.sigma = c.sigma.updated(TagId{0}, TagBinding{ty_top(), nullptr});
    c.store = store_extend_root(TagId{5}, store_extend_root(TagId{0}, Store{}));
    c.term = tm_newtag(ty_top());
    c.ty = ty_tag(ty_top());
    out.push_back({"corrupted-storecontext", c});
  }
  return out;
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  nlohmann::ordered_json machine;
  std::ostringstream human;
  bool pass = true;

  // Differential subtyping over the standard enumeration.
  std::vector<TyRef> universe = enumerate_types(2, {"f", "g"}, 3);
  TagCtx sigma_diff = differential_sigma();
  DeclarativeOracle oracle(sigma_diff, universe);
  std::size_t stable = oracle.stable_height();
  std::size_t disagreements = 0;
  nlohmann::ordered_json first_disagreements = nlohmann::ordered_json::array();
  TypingCtx empty_gamma;
  AmberEnv empty_delta;
  for (const TyRef& lhs : universe) {
    for (const TyRef& rhs : universe) {
      bool algorithmic = subtype_check(empty_delta, empty_gamma, sigma_diff, *lhs, *rhs);
      bool declarative = oracle.derivable(lhs, rhs, empty_delta, stable);
      if (algorithmic != declarative) {
        ++disagreements;
        if (first_disagreements.size() < 5) {
          first_disagreements.push_back({{"lhs", pretty(lhs)},
                                         {"rhs", pretty(rhs)},
                                         {"algorithmic", algorithmic},
                                         {"declarative", declarative}});
        }
      }
    }
  }
  std::size_t pair_count = universe.size() * universe.size();
  bool differential_ok = disagreements == 0;
  pass = pass && differential_ok;
  human << "differential subtyping: universe=" << universe.size() << " pairs=" << pair_count
        << " stable_height=" << stable << " disagreements=" << disagreements
        << (differential_ok ? " [ok]" : " [FAIL]") << '\n';
  machine["differential"] = {{"universe", universe.size()},
                             {"pairs", pair_count},
                             {"stable_height", stable},
                             {"disagreements", disagreements},
                             {"samples", first_disagreements}};

  // Generated-case suites.
  std::size_t stuck = 0;
  std::size_t preservation_failures = 0;
  std::size_t storecontext_failures = 0;
  std::size_t out_of_fuel = 0;
  std::size_t match_cases = 0;
  std::vector<std::uint64_t> failing_seeds;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < options.cases; ++i) {
    std::uint64_t seed = options.seed + i;
    TestCase c = gen_typed_term(seed, options.depth);
    TraceCheck t = check_soundness_trace(c, options.fuel);
    std::map<std::string, std::size_t> hist = construct_histogram(*c.term);
    if (hist.count("Match")) ++match_cases;
    if (!t.progress_ok) ++stuck;
    if (!t.preservation_ok) ++preservation_failures;
    if (!t.storecontext_ok) ++storecontext_failures;
    if (t.out_of_fuel) ++out_of_fuel;
    if (!t.progress_ok || !t.preservation_ok || !t.storecontext_ok) failing_seeds.push_back(seed);
    nlohmann::ordered_json record;
    record["seed"] = seed;
    record["histogram"] = hist;
    record["steps"] = t.steps;
    record["verdicts"] = {{"progress", t.progress_ok},
                          {"preservation", t.preservation_ok},
                          {"storecontext", t.storecontext_ok},
                          {"out_of_fuel", t.out_of_fuel}};
    if (!t.failure.empty()) record["failure"] = t.failure;
    cases.push_back(std::move(record));
  }
  machine["cases"] = std::move(cases);

  bool progress_ok = stuck == 0;
  bool preservation_ok = preservation_failures == 0;
  bool storecontext_ok = storecontext_failures == 0;
  pass = pass && progress_ok && preservation_ok && storecontext_ok;
  human << "progress: cases=" << options.cases << " fuel=" << options.fuel << " stuck=" << stuck
        << " out_of_fuel=" << out_of_fuel << (progress_ok ? " [ok]" : " [FAIL]") << '\n';
  human << "preservation: cases=" << options.cases << " failures=" << preservation_failures
        << (preservation_ok ? " [ok]" : " [FAIL]") << '\n';
  human << "storecontext: cases=" << options.cases << " failures=" << storecontext_failures
        << (storecontext_ok ? " [ok]" : " [FAIL]") << '\n';
  human << "match coverage: " << match_cases << '/' << options.cases << '\n';

  // Negative controls must fail.
  std::size_t controls_failed = 0;
  std::vector<NegativeControl> controls = negative_controls();
  nlohmann::ordered_json control_json = nlohmann::ordered_json::array();
  for (const NegativeControl& control : controls) {
    CaseReport r = check_preservation(control.test_case);
    if (!r.pass) ++controls_failed;
    control_json.push_back({{"name", control.name}, {"failed_as_expected", !r.pass}});
  }
  // A stuck ill-typed term: outside the theorems' hypotheses, and synthesize
  // must reject it.
  {
    TestCase c;
    c.term = tm_extract(tm_unit());
    c.ty = ty_top();
    CaseReport progress = check_progress(c);
    bool rejected = !synthesize(c.gamma, c.sigma, c.term).ok();
    bool ok = !progress.pass && rejected;
    if (ok) ++controls_failed;
    control_json.push_back({{"name", "stuck-and-ill-typed"}, {"failed_as_expected", ok}});
  }
  bool controls_ok = controls_failed == controls.size() + 1;
  pass = pass && controls_ok;
  human << "negative controls: failed=" << controls_failed << '/' << controls.size() + 1
        << (controls_ok ? " [ok]" : " [FAIL]") << '\n';
  machine["negative_controls"] = std::move(control_json);

  // Shrink the smallest failing seed by depth for the report.
  if (!failing_seeds.empty()) {
    std::uint64_t seed = *std::min_element(failing_seeds.begin(), failing_seeds.end());
    std::size_t min_depth = options.depth;
    for (std::size_t d = 1; d < options.depth; ++d) {
      TestCase c = gen_typed_term(seed, d);
      TraceCheck t = check_soundness_trace(c, options.fuel);
      if (!t.progress_ok || !t.preservation_ok || !t.storecontext_ok) {
        min_depth = d;
        break;
      }
    }
    TestCase shrunk = gen_typed_term(seed, min_depth);
    machine["minimized_failure"] = {{"seed", seed},
                                    {"depth", min_depth},
                                    {"term", pretty(shrunk.term)}};
    human << "minimized failure: seed=" << seed << " depth=" << min_depth << " term="
          << pretty(shrunk.term) << '\n';
  }

  machine["summary"] = {{"pass", pass},
                        {"match_cases", match_cases},
                        {"out_of_fuel", out_of_fuel}};
  human << "selftest: " << (pass ? "PASS" : "FAIL") << '\n';

  SelftestReport report;
  report.pass = pass;
  report.human = human.str();
  report.machine_json = machine.dump(2);
  return report;
}

}  // namespace tagcalc
