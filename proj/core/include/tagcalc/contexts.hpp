// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "tagcalc/syntax.hpp"

namespace tagcalc {

/// Variable typing context (Gamma): finite partial map from identifiers to
/// types. Update shadows; lookup of an unbound identifier is absent.
class TypingCtx {
 public:
  TypingCtx() = default;

  std::optional<TyRef> lookup(const std::string& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  TypingCtx updated(const std::string& x, TyRef t) const {
    TypingCtx out = *this;
    out.map_[x] = std::move(t);
    return out;
  }

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::map<std::string, TyRef> map_;
};

/// One tag binding: the tagged body type and, for subtags, the parent name.
struct TagBinding {
  TyRef body;
  NameRef parent;  // null for root tags
};

/// Tag context (Sigma): finite partial map from tag ids to bindings. The
/// parent is stored alongside the body so that looking up a subtag can yield
/// its extended tag type directly.
class TagCtx {
 public:
  TagCtx() = default;

  std::optional<TagBinding> lookup(TagId c) const {
    auto it = map_.find(c.value);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  TagCtx updated(TagId c, TagBinding b) const {
    TagCtx out = *this;
    out.map_[c.value] = std::move(b);
    return out;
  }

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

 private:
  std::map<std::uint64_t, TagBinding> map_;
};

/// Amber environment (Delta): the set of assumed type-variable pairs used by
/// the iso-recursive subtyping rules. Insertion is idempotent.
class AmberEnv {
 public:
  AmberEnv() = default;

  bool contains(const std::string& t, const std::string& u) const {
    return set_.count({t, u}) != 0;
  }

  AmberEnv inserted(const std::string& t, const std::string& u) const {
    AmberEnv out = *this;
    out.set_.insert({t, u});
    return out;
  }

  bool empty() const { return set_.empty(); }
  std::size_t size() const { return set_.size(); }
  auto begin() const { return set_.begin(); }
  auto end() const { return set_.end(); }

 private:
  std::set<std::pair<std::string, std::string>> set_;
};

}  // namespace tagcalc
