// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tagcalc/pretty.hpp"
#include "tagcalc/soundness.hpp"
#include "tagcalc/substitution.hpp"
#include "tagcalc/typing.hpp"

namespace tagcalc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

using Row = std::vector<std::uint64_t>;

bool bit(const std::vector<Row>& m, std::size_t i, std::size_t j) {
  return (m[i][j >> 6] >> (j & 63)) & 1u;
}

void set_bit(std::vector<Row>& m, std::size_t i, std::size_t j) {
  m[i][j >> 6] |= std::uint64_t{1} << (j & 63);
}

void or_into(Row& into, const Row& from) {
  for (std::size_t w = 0; w < into.size(); ++w) into[w] |= from[w];
}

std::string delta_key(const AmberEnv& delta) {
  std::ostringstream os;
  for (const auto& [t, u] : delta) os << t << "<:" << u << ';';
  return os.str();
}

bool name_has_var(const Name& n) {
  switch (n.kind) {
    case Name::Kind::Var: return true;
    case Name::Kind::Tag: return false;
    case Name::Kind::Fst:
    case Name::Kind::Unfold: return name_has_var(*n.inner);
  }
  return false;
}

bool ty_has_var_name(const Ty& t) {
  if (t.name && name_has_var(*t.name)) return true;
  if (t.a && ty_has_var_name(*t.a)) return true;
  if (t.b && ty_has_var_name(*t.b)) return true;
  return false;
}

}  // namespace

struct DeclarativeOracle::Impl {
  struct Info {
    Ty::Kind kind;
    std::string ident;                                       // binder / var name
    std::size_t a = kNone;                                   // first component
    std::size_t b = kNone;                                   // second component
    std::vector<std::pair<std::string, std::size_t>> spine;  // records
    std::vector<std::pair<std::string, std::size_t>> sorted_spine;
    std::string name_text;    // Tagged/TagExt name, pretty form
    std::string parent_text;  // Tagged: supertag name per CVar, "" when root/none
  };

  struct Tables {
    std::vector<std::vector<Row>> levels;  // levels[h-1] = derivable at height <= h
    bool stable = false;
    std::size_t stable_levels = 0;
  };

  TagCtx sigma;
  TypingCtx gamma;  // empty; names in oracle universes are variable-free
  std::vector<TyRef> types;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::string, Tables> tables;
  std::size_t word_count = 0;

  std::size_t intern(const TyRef& t) {
    std::string key = pretty(t);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (!wellformed_ty(*t)) {
      throw std::invalid_argument("oracle universe type is not wellformed: " + key);
    }
    if (ty_has_var_name(*t)) {
      throw std::invalid_argument("oracle universe type mentions a variable name: " + key);
    }
    // Reserve the slot before interning components (cycles are impossible in
    // finite trees, this just keeps indices stable).
    std::size_t idx = types.size();
    types.push_back(t);
    index.emplace(std::move(key), idx);
    return idx;
  }

  void intern_with_components(const TyRef& t) {
    std::size_t idx = intern(t);
    if (t->a) intern_with_components(t->a);
    if (t->b) intern_with_components(t->b);
    if (t->kind == Ty::Kind::TagExt) intern_with_components(ty_tagged(t->name));
    (void)idx;
  }

  // Every ordering of every interned record spine participates as a
  // transitivity middle; spines longer than 6 fields are left alone.
  void close_under_permutation() {
    std::vector<TyRef> snapshot = types;
    for (const TyRef& t : snapshot) {
      if (t->kind != Ty::Kind::RCons) continue;
      std::vector<std::pair<std::string, TyRef>> fields;
      const Ty* cur = t.get();
      bool proper = true;
      while (cur->kind == Ty::Kind::RCons) {
        fields.emplace_back(cur->ident, cur->a);
        if (!cur->b) {
          proper = false;
          break;
        }
        cur = cur->b.get();
      }
      if (!proper || cur->kind != Ty::Kind::RNil || fields.size() > 6) continue;
      std::sort(fields.begin(), fields.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      do {
        TyRef rec = ty_rnil();
        for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
          rec = ty_rcons(it->first, it->second, rec);
        }
        intern_with_components(rec);
      } while (std::next_permutation(
          fields.begin(), fields.end(),
          [](const auto& x, const auto& y) { return x.first < y.first; }));
    }
  }

  std::vector<Info> info;

  void build_info() {
    info.resize(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) {
      const Ty& t = *types[i];
      Info& in = info[i];
      in.kind = t.kind;
      in.ident = t.ident;
      if (t.a) in.a = index.at(pretty(t.a));
      if (t.b) in.b = index.at(pretty(t.b));
      if (t.kind == Ty::Kind::RCons || t.kind == Ty::Kind::RNil) {
        const Ty* cur = &t;
        while (cur->kind == Ty::Kind::RCons) {
          in.spine.emplace_back(cur->ident, index.at(pretty(cur->a)));
          cur = cur->b.get();
        }
        in.sorted_spine = in.spine;
        std::sort(in.sorted_spine.begin(), in.sorted_spine.end());
      }
      if (t.kind == Ty::Kind::Tagged) {
        in.name_text = pretty(t.name);
        std::optional<TyRef> nt = name_tag_type(gamma, sigma, *t.name);
        if (nt && (*nt)->kind == Ty::Kind::TagExt) in.parent_text = pretty((*nt)->name);
      }
      if (t.kind == Ty::Kind::TagExt) {
        in.name_text = pretty(t.name);
        in.a = index.at(pretty(t.a));
        in.b = index.at(pretty(ty_tagged(t.name)));  // Tagged(parent) slot
      }
    }
  }

  std::vector<Row> fresh_matrix() const {
    return std::vector<Row>(types.size(), Row(word_count, 0));
  }

  std::vector<Row> axioms(const AmberEnv& delta) const {
    std::vector<Row> m = fresh_matrix();
    const std::size_t n = types.size();
    for (std::size_t i = 0; i < n; ++i) set_bit(m, i, i);  // ST-Reflexive
    for (std::size_t i = 0; i < n; ++i) {
      const Info& li = info[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || bit(m, i, j)) continue;
        const Info& rj = info[j];
        switch (li.kind) {
          case Ty::Kind::Var:  // ST-Amber-1
            if (rj.kind == Ty::Kind::Var && delta.contains(li.ident, rj.ident)) {
              set_bit(m, i, j);
            }
            break;
          case Ty::Kind::RCons:
          case Ty::Kind::RNil: {
            if (rj.kind != Ty::Kind::RCons && rj.kind != Ty::Kind::RNil) break;
            // ST-Record-1: the right spine is a prefix of the left one.
            if (rj.spine.size() <= li.spine.size() &&
                std::equal(rj.spine.begin(), rj.spine.end(), li.spine.begin())) {
              set_bit(m, i, j);
              break;
            }
            // ST-Record-3: same fields, permuted.
            if (li.sorted_spine.size() == rj.sorted_spine.size() &&
                li.sorted_spine == rj.sorted_spine) {
              set_bit(m, i, j);
            }
            break;
          }
          case Ty::Kind::Tagged:  // ST-Tag-1 via the name's tag type
            if (rj.kind == Ty::Kind::Tagged && !li.parent_text.empty() &&
                li.parent_text == rj.name_text) {
              set_bit(m, i, j);
            }
            break;
          case Ty::Kind::TagExt:  // ST-Tag-3
            if (rj.kind == Ty::Kind::Tag && li.a == rj.a) set_bit(m, i, j);
            break;
          default:
            break;
        }
      }
    }
    return m;
  }

  const std::vector<Row>& level(const AmberEnv& delta, std::size_t height) {
    Tables& t = ensure(delta, height);
    std::size_t idx = std::min(height, t.levels.size()) - 1;
    return t.levels[idx];
  }

  // Builds levels[0..height-1] for delta (levels[h-1] holds judgments of
  // height <= h) unless the relation stabilizes earlier. References into
  // `tables` stay valid across the recursive Amber-2 lookups because the map
  // is node-based.
  Tables& ensure(const AmberEnv& delta, std::size_t height) {
    Tables& t = tables[delta_key(delta)];
    if (t.levels.empty()) t.levels.push_back(axioms(delta));
    while (t.levels.size() < height && !t.stable) {
      std::size_t prev_height = t.levels.size();
      std::vector<Row> next = t.levels.back();
      apply_rules(delta, t.levels[prev_height - 1], next, prev_height);
      apply_transitivity(t.levels[prev_height - 1], next);
      if (next == t.levels[prev_height - 1]) {
        t.stable = true;
        t.stable_levels = prev_height;
      } else {
        t.levels.push_back(std::move(next));
      }
    }
    return t;
  }

  void apply_rules(const AmberEnv& delta, const std::vector<Row>& prev, std::vector<Row>& next,
                   std::size_t prev_height) {
    const std::size_t n = types.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Info& li = info[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (bit(next, i, j)) continue;
        const Info& rj = info[j];
        if (li.kind != rj.kind) continue;
        switch (li.kind) {
          case Ty::Kind::RCons: {  // ST-Record-2: same labels in order, pointwise
            if (li.spine.size() != rj.spine.size()) break;
            bool ok = true;
            for (std::size_t k = 0; k < li.spine.size() && ok; ++k) {
              ok = li.spine[k].first == rj.spine[k].first &&
                   bit(prev, li.spine[k].second, rj.spine[k].second);
            }
            if (ok) set_bit(next, i, j);
            break;
          }
          case Ty::Kind::Prod:  // ST-App
            if (li.ident == rj.ident && bit(prev, rj.a, li.a) && bit(prev, li.b, rj.b)) {
              set_bit(next, i, j);
            }
            break;
          case Ty::Kind::Mu: {  // ST-Amber-2: bodies under the extended delta
            const std::vector<Row>& body =
                level(delta.inserted(li.ident, rj.ident), prev_height);
            if (bit(body, li.a, rj.a)) set_bit(next, i, j);
            break;
          }
          case Ty::Kind::TagExt:  // ST-Tag-2 (same body)
            if (li.a == rj.a && bit(prev, li.b, rj.b)) set_bit(next, i, j);
            break;
          default:
            break;
        }
      }
    }
  }

  void apply_transitivity(const std::vector<Row>& prev, std::vector<Row>& next) {
    const std::size_t n = types.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < n; ++m) {
        if (bit(prev, i, m)) or_into(next[i], prev[m]);
      }
    }
  }
};

DeclarativeOracle::DeclarativeOracle(TagCtx sigma, std::vector<TyRef> universe)
    : impl_(std::make_unique<Impl>()) {
  impl_->sigma = std::move(sigma);
  for (const TyRef& t : universe) impl_->intern_with_components(t);
  impl_->close_under_permutation();
  impl_->word_count = (impl_->types.size() + 63) / 64;
  impl_->build_info();
}

DeclarativeOracle::~DeclarativeOracle() = default;
DeclarativeOracle::DeclarativeOracle(DeclarativeOracle&&) noexcept = default;
DeclarativeOracle& DeclarativeOracle::operator=(DeclarativeOracle&&) noexcept = default;

bool DeclarativeOracle::derivable(const TyRef& lhs, const TyRef& rhs, const AmberEnv& delta,
                                  std::size_t height) {
  if (height == 0) return false;
  auto li = impl_->index.find(pretty(lhs));
  auto rj = impl_->index.find(pretty(rhs));
  if (li == impl_->index.end() || rj == impl_->index.end()) {
    throw std::invalid_argument("subtype_oracle: query type is outside the universe");
  }
  const std::vector<Row>& m = impl_->level(delta, height);
  return bit(m, li->second, rj->second);
}

std::size_t DeclarativeOracle::stable_height() {
  AmberEnv empty;
  std::size_t h = 2;
  for (;;) {
    Impl::Tables& t = impl_->ensure(empty, h);
    if (t.stable) return t.stable_levels;
    h *= 2;
  }
}

bool subtype_oracle(const SubtypeQuery& q, std::size_t depth,
                    const std::vector<TyRef>& universe) {
  std::vector<TyRef> all = universe;
  all.push_back(q.lhs);
  all.push_back(q.rhs);
  DeclarativeOracle oracle(q.sigma, all);
  return oracle.derivable(q.lhs, q.rhs, q.delta, depth);
}

// ---------------------------------------------------------------------------
// Declarative typing search
// ---------------------------------------------------------------------------

namespace {

struct DeclTyper {
  const TagCtx& sigma;
  const std::vector<TyRef>& universe;
  DeclarativeOracle& oracle;
  std::map<std::string, bool> memo;

  static std::string gamma_key(const TypingCtx& gamma) {
    std::ostringstream os;
    for (const auto& [x, t] : gamma) os << x << ':' << pretty(t) << ';';
    return os.str();
  }

  bool oracle_sub(const TyRef& a, const TyRef& b) {
    return oracle.derivable(a, b, AmberEnv{}, 32);
  }

  // Declarative mutual supertype: some universe type bounds both.
  bool mutual(const TyRef& a, const TyRef& b) {
    for (const TyRef& t : universe) {
      if (oracle_sub(a, t) && oracle_sub(b, t)) return true;
    }
    return false;
  }

  bool typed(const TypingCtx& gamma, const TmRef& e, const TyRef& ty, std::size_t h) {
    if (h == 0) return false;
    std::string key = gamma_key(gamma) + '|' + pretty(e) + "::" + pretty(ty) + '@' +
                      std::to_string(h);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = false;  // cut cycles pessimistically while computing
    bool result = typed_raw(gamma, e, ty, h);
    memo[key] = result;
    return result;
  }

  bool typed_raw(const TypingCtx& gamma, const TmRef& e, const TyRef& ty, std::size_t h) {
    if (!wellformed_ty(*ty)) return false;
    // Sub: any derivably smaller universe type works.
    for (const TyRef& t : universe) {
      if (equal(t, ty)) continue;
      if (oracle_sub(t, ty) && typed(gamma, e, t, h - 1)) return true;
    }
    switch (e->kind) {
      case Tm::Kind::Unit:
        return ty->kind == Ty::Kind::Top;
      case Tm::Kind::Name: {
        std::optional<TyRef> t = name_tag_type(gamma, sigma, *e->name);
        return t && equal(*t, ty);
      }
      case Tm::Kind::NewTag:
        return wellformed_ty(*e->type) && equal(ty, ty_tag(e->type));
      case Tm::Kind::SubTag: {
        if (!equal(ty, ty_tag_ext(e->type, e->name))) return false;
        std::optional<TyRef> parent = name_tag_type(gamma, sigma, *e->name);
        if (!parent) return false;
        const Ty& pt = **parent;
        if (pt.kind != Ty::Kind::Tag && pt.kind != Ty::Kind::TagExt) return false;
        return oracle_sub(e->type, pt.a);
      }
      case Tm::Kind::New: {
        if (!equal(ty, ty_tagged(e->name))) return false;
        std::optional<TyRef> tag = name_tag_type(gamma, sigma, *e->name);
        if (!tag) return false;
        const Ty& tt = **tag;
        if (tt.kind != Ty::Kind::Tag && tt.kind != Ty::Kind::TagExt) return false;
        return typed(gamma, e->a, tt.a, h - 1);
      }
      case Tm::Kind::Match: {
        for (const TyRef& scrut : universe) {
          if (scrut->kind != Ty::Kind::Tagged) continue;
          if (!typed(gamma, e->a, scrut, h - 1)) continue;
          if (!mutual(ty_tagged(e->name), scrut)) continue;
          TypingCtx hit_ctx = gamma.updated(e->ident, ty_tagged(e->name));
          if (typed(hit_ctx, e->b, ty, h - 1) && typed(gamma, e->c, ty, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Extract: {
        for (const TyRef& scrut : universe) {
          if (scrut->kind != Ty::Kind::Tagged) continue;
          std::optional<TyRef> tag = name_tag_type(gamma, sigma, *scrut->name);
          if (!tag) continue;
          const Ty& tt = **tag;
          if (tt.kind != Ty::Kind::Tag && tt.kind != Ty::Kind::TagExt) continue;
          if (!equal(tt.a, ty)) continue;
          if (typed(gamma, e->a, scrut, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Lam: {
        if (ty->kind != Ty::Kind::Prod || ty->ident != e->ident || !equal(ty->a, e->type)) {
          return false;
        }
        return typed(gamma.updated(e->ident, e->type), e->a, ty->b, h - 1);
      }
      case Tm::Kind::App: {
        if (e->b->kind != Tm::Kind::Name) return false;  // t_app takes a name
        for (const TyRef& fn : universe) {
          if (fn->kind != Ty::Kind::Prod) continue;
          if (!equal(subst_name_ty(e->b->name, fn->ident, fn->b), ty)) continue;
          if (typed(gamma, e->a, fn, h - 1) && typed(gamma, e->b, fn->a, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Pair: {
        if (ty->kind != Ty::Kind::Sum) return false;
        if (e->a->kind != Tm::Kind::Name) return false;  // t_sum_1 takes a name
        if (!typed(gamma, e->a, ty->a, h - 1)) return false;
        return typed(gamma, e->b, subst_name_ty(e->a->name, ty->ident, ty->b), h - 1);
      }
      case Tm::Kind::Fst: {
        for (const TyRef& sum : universe) {
          if (sum->kind != Ty::Kind::Sum || !equal(sum->a, ty)) continue;
          if (typed(gamma, e->a, sum, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Snd: {
        if (e->a->kind != Tm::Kind::Name) return false;  // t_e2 takes a name
        for (const TyRef& sum : universe) {
          if (sum->kind != Ty::Kind::Sum) continue;
          if (!equal(subst_name_ty(name_fst(e->a->name), sum->ident, sum->b), ty)) continue;
          if (typed(gamma, e->a, sum, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::RNil:
        return ty->kind == Ty::Kind::RNil;
      case Tm::Kind::RCons: {
        if (ty->kind != Ty::Kind::RCons || ty->ident != e->ident) return false;
        if (!record_tm(*e->b) || !record_ty(*ty->b)) return false;
        return typed(gamma, e->a, ty->a, h - 1) && typed(gamma, e->b, ty->b, h - 1);
      }
      case Tm::Kind::Proj: {
        for (const TyRef& rec : universe) {
          if (!record_ty(*rec)) continue;
          std::optional<TyRef> field = ty_lookup(e->ident, *rec);
          if (!field || !equal(*field, ty)) continue;
          if (typed(gamma, e->a, rec, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Let: {
        for (const TyRef& bound : universe) {
          if (!typed(gamma, e->a, bound, h - 1)) continue;
          if (typed(gamma.updated(e->ident, bound), e->b, ty, h - 1)) return true;
        }
        return false;
      }
      case Tm::Kind::Fix:
        for (const TyRef& fn : universe) {
          if (fn->kind != Ty::Kind::Prod || !equal(fn->a, ty) || !equal(fn->b, ty)) continue;
          if (typed(gamma, e->a, fn, h - 1)) return true;
        }
        return false;
      case Tm::Kind::Fold: {
        if (e->type->kind != Ty::Kind::Mu || !equal(ty, e->type)) return false;
        TyRef unrolled = subst_tyvar(e->type->ident, e->type, e->type->a);
        return typed(gamma, e->a, unrolled, h - 1);
      }
      case Tm::Kind::Unfold: {
        for (const TyRef& mu : universe) {
          if (mu->kind != Ty::Kind::Mu) continue;
          if (!equal(subst_tyvar(mu->ident, mu, mu->a), ty)) continue;
          if (typed(gamma, e->a, mu, h - 1)) return true;
        }
        return false;
      }
    }
    return false;
  }
};

}  // namespace

bool decl_typed(const TypingCtx& gamma, const TagCtx& sigma, const TmRef& e, const TyRef& ty,
                std::size_t height, const std::vector<TyRef>& type_universe,
                DeclarativeOracle& oracle) {
  DeclTyper typer{sigma, type_universe, oracle, {}};
  return typer.typed(gamma, e, ty, height);
}

}  // namespace tagcalc
