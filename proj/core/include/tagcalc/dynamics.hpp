// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tagcalc/syntax.hpp"
#include "tagcalc/tag_store.hpp"

namespace tagcalc {

/// A tag allocated by r_cls or r_ccls, with the annotation it was created
/// from. The soundness harness uses this to grow Sigma alongside the store.
struct TagAlloc {
  TagId id;
  TyRef body;
  std::optional<TagId> parent;
};

struct StepResult {
  enum class Status { Stepped, Value, Stuck };
  Status status;
  Store store;                    // Stepped
  TmRef term;                     // Stepped
  std::string rule;               // Stepped; congruences chain as "r_let/r_cls"
  std::optional<TagAlloc> alloc;  // Stepped via r_cls / r_ccls
  std::string reason;             // Stuck
};

/// Value judgment relative to the store: tags must be store-resident, New
/// and Fold wrap values, records are spines of values, lambdas, pairs of
/// values and unit are values.
bool is_value(const Store& store, const Tm& e);

/// One small step. Total: ill-typed terms come back Stuck with a reason.
StepResult step(const Store& store, const TmRef& e);

struct TraceEntry {
  std::string rule;
  TmRef term;
  Store store;
  bool store_changed;
};

struct EvalResult {
  enum class Status { Value, Stuck, OutOfFuel };
  Status status;
  Store store;
  TmRef term;
  std::vector<TraceEntry> trace;
  std::string stuck_reason;
};

/// Iterates step at most fuel times.
EvalResult evaluate(Store store, TmRef e, std::size_t fuel);

/// Numbered trace: line 0 is the initial state with its store, then one line
/// per step; the store dump follows a line only when the step changed it.
std::string render_trace(const TmRef& initial, const Store& initial_store,
                         const EvalResult& result);

}  // namespace tagcalc
