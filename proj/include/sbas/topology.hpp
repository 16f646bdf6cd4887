#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sbas/address.hpp"

namespace sbas {

enum class Relationship : std::int8_t {
  ProviderToCustomer = -1,  // `a` is a provider of `b`
  Peer = 0,
};

struct Edge {
  AsNumber a;
  AsNumber b;
  Relationship rel = Relationship::ProviderToCustomer;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable AS-level graph. ASes are addressed by dense indices ordered by ASN,
// and every adjacency list is sorted by neighbor ASN.
class Topology {
 public:
  using Index = std::uint32_t;

  Topology() = default;

  // Builds from an edge list. Throws ParseError on self-loops or conflicting
  // relationships for the same pair; exact duplicates are collapsed.
  static Topology from_edges(std::span<const Edge> edges);

  std::size_t size() const { return asns_.size(); }
  AsNumber asn(Index i) const { return asns_[i]; }
  const std::vector<AsNumber>& asns() const { return asns_; }
  std::optional<Index> index_of(AsNumber asn) const;
  Index require(AsNumber asn) const;
  bool contains(AsNumber asn) const { return index_.contains(asn); }

  std::span<const Index> providers(Index i) const { return providers_[i]; }
  std::span<const Index> customers(Index i) const { return customers_[i]; }
  std::span<const Index> peers(Index i) const { return peers_[i]; }

  std::optional<Relationship> relationship(AsNumber a, AsNumber b) const;

  // Canonical edge list: provider->customer edges as (provider, customer), peer
  // edges with a < b, sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t provider_edge_count() const;
  std::size_t peer_edge_count() const;

 private:
  std::vector<AsNumber> asns_;
  std::unordered_map<AsNumber, Index> index_;
  std::vector<std::vector<Index>> providers_;
  std::vector<std::vector<Index>> customers_;
  std::vector<std::vector<Index>> peers_;
  std::vector<Edge> edges_;
};

// CAIDA serial-2 relationship text: `<as1>|<as2>|<rel>[|<source>]`, `#` comments.
Topology parse_relationships(std::istream& in);
Topology parse_relationships(const std::string& text);
Topology load_relationships(const std::filesystem::path& path);

std::string serialize_relationships(const Topology& topology);

// Union of `topology` and `extra`. Identical duplicates are ignored, a
// different relationship for an existing pair throws ParseError.
Topology augment_edges(const Topology& topology, std::span<const Edge> extra);

}  // namespace sbas
