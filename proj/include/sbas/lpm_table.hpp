#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sbas/address.hpp"

namespace sbas {

// Longest-prefix-match table over a binary trie, one trie per address family.
template <typename T>
class LpmTable {
 public:
  struct Hit {
    Prefix prefix;
    const T* value;
  };

  LpmTable() { roots_.fill(-1); }

  // Inserts or replaces the entry for `prefix`.
  void insert(const Prefix& prefix, T value) {
    std::int32_t node = root(prefix.version());
    for (unsigned i = 0; i < prefix.length(); ++i) {
      unsigned b = prefix.network().bit(i);
      if (nodes_[node].child[b] < 0) {
        nodes_[node].child[b] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      node = nodes_[node].child[b];
    }
    if (nodes_[node].slot < 0) {
      nodes_[node].slot = static_cast<std::int32_t>(entries_.size());
      entries_.emplace_back(prefix, std::move(value));
    } else {
      entries_[nodes_[node].slot].second = std::move(value);
    }
  }

  std::optional<Hit> lookup(const IpAddress& addr) const {
    std::int32_t node = roots_[index(addr.version())];
    if (node < 0) return std::nullopt;
    std::int32_t best = nodes_[node].slot;
    const unsigned depth = max_length(addr.version());
    for (unsigned i = 0; i < depth; ++i) {
      node = nodes_[node].child[addr.bit(i)];
      if (node < 0) break;
      if (nodes_[node].slot >= 0) best = nodes_[node].slot;
    }
    if (best < 0) return std::nullopt;
    return Hit{entries_[best].first, &entries_[best].second};
  }

  const T* find_exact(const Prefix& prefix) const {
    std::int32_t node = roots_[index(prefix.version())];
    for (unsigned i = 0; node >= 0 && i < prefix.length(); ++i) node = nodes_[node].child[prefix.network().bit(i)];
    if (node < 0 || nodes_[node].slot < 0) return nullptr;
    return &entries_[nodes_[node].slot].second;
  }

  // Entries in insertion order.
  const std::vector<std::pair<Prefix, T>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  struct Node {
    std::int32_t child[2] = {-1, -1};
    std::int32_t slot = -1;
  };

  static std::size_t index(IpVersion v) { return v == IpVersion::V4 ? 0 : 1; }

  std::int32_t root(IpVersion v) {
    auto& r = roots_[index(v)];
    if (r < 0) {
      r = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
    }
    return r;
  }

  std::array<std::int32_t, 2> roots_;
  std::vector<Node> nodes_;
  std::vector<std::pair<Prefix, T>> entries_;
};

}  // namespace sbas
