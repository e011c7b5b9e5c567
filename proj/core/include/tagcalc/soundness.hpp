// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tagcalc/contexts.hpp"
#include "tagcalc/dynamics.hpp"
#include "tagcalc/subtype.hpp"
#include "tagcalc/syntax.hpp"
#include "tagcalc/tag_store.hpp"

namespace tagcalc {

/// Every binding of inner (body and parent alike) is present identically in
/// outer.
bool subcontext(const TagCtx& inner, const TagCtx& outer);

/// The tags bound in sigma are exactly the tags heading store entries, and
/// each tag's recorded parent is the first ancestor on its store path (roots
/// have neither).
bool storecontext_check(const TagCtx& sigma, const Store& store);

/// All wellformed types of syntactic depth <= depth over: Top, the type
/// variable "t", Tagged over the first tag_count tag ids, Tag/TagExtends with
/// Top bodies, records over label_set, Prod/Sum with binder "x", and Mu with
/// binder "t". Deterministic order, no duplicates.
std::vector<TyRef> enumerate_types(std::size_t tag_count,
                                   const std::vector<std::string>& labels, std::size_t depth);

/// Declarative subtyping with explicit reflexivity and transitivity, decided
/// by a height-indexed fixpoint over an interned universe. Transitivity
/// middles come from the universe closed under record-spine permutation (a
/// permuted record is the same declarative type, merely enumerated once).
/// Universes must not mention variable names inside Tagged/TagExtends types.
class DeclarativeOracle {
 public:
  DeclarativeOracle(TagCtx sigma, std::vector<TyRef> universe);
  ~DeclarativeOracle();
  DeclarativeOracle(DeclarativeOracle&&) noexcept;
  DeclarativeOracle& operator=(DeclarativeOracle&&) noexcept;

  /// Derivability with derivation height <= height under delta.
  bool derivable(const TyRef& lhs, const TyRef& rhs, const AmberEnv& delta, std::size_t height);

  /// Height at which the empty-delta relation stops growing; heights beyond
  /// it answer identically.
  std::size_t stable_height();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot form of the oracle for a single query.
bool subtype_oracle(const SubtypeQuery& q, std::size_t depth,
                    const std::vector<TyRef>& universe);

/// Declarative typing search: derivable judgments of height <= height in the
/// rule-per-rule system with subsumption as a standalone rule, quantifiers
/// resolved against type_universe. Used to cross-check synthesize.
bool decl_typed(const TypingCtx& gamma, const TagCtx& sigma, const TmRef& e, const TyRef& ty,
                std::size_t height, const std::vector<TyRef>& type_universe,
                DeclarativeOracle& oracle);

/// A generated closed well-typed program state.
struct TestCase {
  TypingCtx gamma;  // empty for closed runs
  TagCtx sigma;
  Store store;
  TmRef term;
  TyRef ty;
  std::uint64_t seed = 0;
};

/// Type-directed random generation, deterministic in seed. The resulting
/// case always satisfies the TestCase invariants (storecontext holds and the
/// term synthesizes a subtype of ty).
TestCase gen_typed_term(std::uint64_t seed, std::size_t depth);

struct CaseReport {
  bool pass = true;
  std::string message;
  /// Paper-direction subcontext(after, before); recorded so the direction
  /// discrepancy stays visible next to the checked one.
  bool subcontext_paper_direction = true;
};

/// One step: the post-state must re-synthesize a subtype of case.ty under
/// the step-extended sigma, which must still match the store. Vacuous on
/// values.
CaseReport check_preservation(const TestCase& c);

/// The state is a value or steps.
CaseReport check_progress(const TestCase& c);

struct TraceCheck {
  bool progress_ok = true;
  bool preservation_ok = true;
  bool storecontext_ok = true;
  std::size_t steps = 0;
  bool out_of_fuel = false;
  std::string failure;
};

/// Walks the whole trace (up to fuel steps), re-checking progress,
/// preservation and storecontext at every state while growing sigma with
/// each allocation.
TraceCheck check_soundness_trace(const TestCase& c, std::size_t fuel);

/// Constructor histogram of a term, keyed by constructor name.
std::map<std::string, std::size_t> construct_histogram(const Tm& e);

struct SelftestOptions {
  std::size_t cases = 1000;
  std::uint64_t seed = 0;
  std::size_t depth = 4;
  std::size_t fuel = 200;
};

struct SelftestReport {
  bool pass = false;
  std::string human;         // deterministic multi-line summary
  std::string machine_json;  // one record per case, plus suite summaries
};

/// Runs the differential-subtyping, progress and preservation suites
/// (including the built-in negative controls). Output is byte-stable for
/// fixed options.
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace tagcalc
