// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "tagcalc/syntax.hpp"

// Purely syntactic random ASTs (not necessarily well-typed) for round-trip
// and substitution-law properties. Deterministic in the engine state.
namespace tagcalc::testgen {

inline std::string pick_ident(std::mt19937_64& rng) {
  static const char* names[] = {"x", "y", "z", "f", "g", "w", "q"};
  return names[rng() % 7];
}

inline std::string pick_label(std::mt19937_64& rng) {
  static const char* names[] = {"f", "g", "h"};
  return names[rng() % 3];
}

inline NameRef gen_name(std::mt19937_64& rng, std::size_t depth) {
  if (depth <= 1) {
    if (rng() % 2 == 0) return name_var(pick_ident(rng));
    return name_tag(TagId{rng() % 4});
  }
  switch (rng() % 4) {
    case 0: return name_var(pick_ident(rng));
    case 1: return name_tag(TagId{rng() % 4});
    case 2: return name_fst(gen_name(rng, depth - 1));
    default: return name_unfold(gen_name(rng, depth - 1));
  }
}

inline TyRef gen_ty(std::mt19937_64& rng, std::size_t depth) {
  if (depth <= 1) {
    switch (rng() % 3) {
      case 0: return ty_top();
      case 1: return ty_var(pick_ident(rng));
      default: return ty_rnil();
    }
  }
  switch (rng() % 10) {
    case 0: return ty_top();
    case 1: return ty_var(pick_ident(rng));
    case 2: return ty_rnil();
    case 3: return ty_tag(gen_ty(rng, depth - 1));
    case 4: return ty_tag_ext(gen_ty(rng, depth - 1), gen_name(rng, depth - 1));
    case 5: return ty_tagged(gen_name(rng, depth - 1));
    case 6: return ty_prod(pick_ident(rng), gen_ty(rng, depth - 1), gen_ty(rng, depth - 1));
    case 7: return ty_sum(pick_ident(rng), gen_ty(rng, depth - 1), gen_ty(rng, depth - 1));
    case 8: {
      // Proper record spines with distinct labels.
      TyRef out = ty_rnil();
      std::vector<std::string> labels = {"f", "g", "h"};
      std::size_t n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        out = ty_rcons(labels[i], gen_ty(rng, depth - 1), out);
      }
      return out;
    }
    default: return ty_mu(pick_ident(rng), gen_ty(rng, depth - 1));
  }
}

inline TmRef gen_tm(std::mt19937_64& rng, std::size_t depth) {
  if (depth <= 1) {
    switch (rng() % 4) {
      case 0: return tm_unit();
      case 1: return tm_rnil();
      case 2: return tm_name(gen_name(rng, 1));
      default: return tm_name(name_var(pick_ident(rng)));
    }
  }
  switch (rng() % 19) {
    case 0: return tm_newtag(gen_ty(rng, depth - 1));
    case 1: return tm_subtag(gen_ty(rng, depth - 1), gen_name(rng, depth - 1));
    case 2: return tm_new(gen_name(rng, depth - 1), gen_tm(rng, depth - 1));
    case 3:
      return tm_match(gen_tm(rng, depth - 1), gen_name(rng, depth - 1), pick_ident(rng),
                      gen_tm(rng, depth - 1), gen_tm(rng, depth - 1));
    case 4: return tm_extract(gen_tm(rng, depth - 1));
    case 5: return tm_lam(pick_ident(rng), gen_ty(rng, depth - 1), gen_tm(rng, depth - 1));
    case 6: return tm_app(gen_tm(rng, depth - 1), gen_tm(rng, depth - 1));
    case 7: {
      TmRef out = tm_rnil();
      std::vector<std::string> labels = {"f", "g", "h"};
      std::size_t n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        out = tm_rcons(labels[i], gen_tm(rng, depth - 1), out);
      }
      return out;
    }
    case 8: return tm_proj(gen_tm(rng, depth - 1), pick_label(rng));
    case 9: return tm_let(pick_ident(rng), gen_tm(rng, depth - 1), gen_tm(rng, depth - 1));
    case 10: return tm_fix(gen_tm(rng, depth - 1));
    case 11: return tm_fold(ty_mu(pick_ident(rng), gen_ty(rng, depth - 1)), gen_tm(rng, depth - 1));
    case 12: return tm_unfold(gen_tm(rng, depth - 1));
    case 13: return tm_pair(gen_tm(rng, depth - 1), gen_tm(rng, depth - 1));
    case 14: return tm_fst(gen_tm(rng, depth - 1));
    case 15: return tm_snd(gen_tm(rng, depth - 1));
    case 16: return tm_unit();
    case 17: return tm_name(gen_name(rng, depth - 1));
    default: return gen_tm(rng, depth - 1);
  }
}

}  // namespace tagcalc::testgen
