// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include "tagcalc/tag_store.hpp"

#include <algorithm>
#include <sstream>

namespace tagcalc {

bool path_contains(TagId c, const Path& p) {
  return std::find(p.tags.begin(), p.tags.end(), c) != p.tags.end();
}

bool store_contains(TagId c, const Store& s) {
  for (const Path& p : s.entries()) {
    if (path_contains(c, p)) return true;
  }
  return false;
}

std::pair<TagId, Store> fresh_tag(const Store& s) {
  Store out = s;
  TagId id{out.next_id_};
  out.next_id_ += 1;
  return {id, out};
}

Store store_extend_root(TagId c, const Store& s) {
  if (store_contains(c, s)) {
    throw StoreError("store_extend_root: tag #" + std::to_string(c.value) +
                     " is already in the store");
  }
  Store out = s;
  out.entries_.insert(out.entries_.begin(), Path{{c}});
  out.next_id_ = std::max(out.next_id_, c.value + 1);
  return out;
}

Store store_extend_child(TagId child, TagId parent, const Store& s) {
  if (store_contains(child, s)) {
    throw StoreError("store_extend_child: tag #" + std::to_string(child.value) +
                     " is already in the store");
  }
  std::optional<Path> parent_path = path_of(parent, s);
  if (!parent_path) {
    throw StoreError("store_extend_child: parent #" + std::to_string(parent.value) +
                     " heads no store entry");
  }
  Path entry;
  entry.tags.reserve(parent_path->tags.size() + 1);
  entry.tags.push_back(child);
  entry.tags.insert(entry.tags.end(), parent_path->tags.begin(), parent_path->tags.end());
  Store out = s;
  out.entries_.insert(out.entries_.begin(), std::move(entry));
  out.next_id_ = std::max(out.next_id_, child.value + 1);
  return out;
}

std::optional<Path> path_of(TagId c, const Store& s) {
  for (const Path& p : s.entries()) {
    if (!p.tags.empty() && p.tags.front() == c) return p;
  }
  return std::nullopt;
}

std::string store_dump(const Store& s) {
  std::ostringstream os;
  for (const Path& p : s.entries()) {
    for (TagId c : p.tags) os << '#' << c.value << " -> ";
    os << ".\n";
  }
  os << "next_id: " << s.next_id() << '\n';
  return os.str();
}

}  // namespace tagcalc
