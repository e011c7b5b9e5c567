// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tagcalc/syntax.hpp"

namespace tagcalc {

/// A store path: the tag itself followed by its ancestors in order. Always
/// nonempty; no tag repeats within one path.
struct Path {
  std::vector<TagId> tags;
};

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The dynamic hierarchical tag store: a sequence of paths, newest first,
/// plus a monotone counter for fresh-tag allocation. Each tag heads at most
/// one entry, ancestors head entries of their own, and next_id exceeds every
/// tag in the store. Values are immutable; extension returns a new store.
class Store {
 public:
  Store() = default;

  const std::vector<Path>& entries() const { return entries_; }
  std::uint64_t next_id() const { return next_id_; }

  bool empty() const { return entries_.empty(); }

  friend std::pair<TagId, Store> fresh_tag(const Store& s);
  friend Store store_extend_root(TagId c, const Store& s);
  friend Store store_extend_child(TagId child, TagId parent, const Store& s);

 private:
  std::vector<Path> entries_;
  std::uint64_t next_id_ = 0;
};

/// True iff c occurs anywhere in p (head or ancestors).
bool path_contains(TagId c, const Path& p);

/// True iff some entry's path contains c. Given the store invariants this
/// coincides with "c heads an entry".
bool store_contains(TagId c, const Store& s);

/// Next counter value as a fresh tag, plus the bumped store. The returned
/// id is never contained in s.
std::pair<TagId, Store> fresh_tag(const Store& s);

/// Prepends the root entry [c]. Throws StoreError if c is already contained
/// (broken freshness is a contract violation, not a program state).
Store store_extend_root(TagId c, const Store& s);

/// Prepends the entry child -> parent -> parent's ancestors. The parent's
/// own entry is unchanged. Throws StoreError if child is already contained
/// or the parent heads no entry.
Store store_extend_child(TagId child, TagId parent, const Store& s);

/// The unique entry headed by c, or absent.
std::optional<Path> path_of(TagId c, const Store& s);

/// Trace dump: one line per entry, "#k -> #a -> .", then "next_id: k".
std::string store_dump(const Store& s);

}  // namespace tagcalc
