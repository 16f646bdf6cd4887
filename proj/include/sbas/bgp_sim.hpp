#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbas/topology.hpp"

namespace sbas {

// Relationship over which the route was learned. Origin and Customer share the
// top selection tier; an AS that originates the prefix never replaces its own
// announcement with a learned one.
enum class RouteClass : std::uint8_t { Provider = 0, Peer = 1, Customer = 2, Origin = 3 };

constexpr int selection_rank(RouteClass c) { return c == RouteClass::Origin ? 2 : static_cast<int>(c); }
const char* to_string(RouteClass c);

struct OriginKind {
  enum class Kind : std::uint8_t { Victim, Attacker };
  Kind kind = Kind::Victim;
  AsNumber node;  // announcing AS

  static OriginKind victim(AsNumber node) { return {Kind::Victim, node}; }
  static OriginKind attacker(AsNumber node) { return {Kind::Attacker, node}; }
  bool is_attacker() const { return kind == Kind::Attacker; }

  friend bool operator==(const OriginKind&, const OriginKind&) = default;
};

struct Route {
  std::vector<AsNumber> as_path;  // deciding AS first, origin last
  RouteClass route_class = RouteClass::Origin;
  OriginKind origin;

  std::size_t length() const { return as_path.size(); }
};

class TiebreakPolicy {
 public:
  enum class Kind : std::uint8_t { LowestNextHopAsn, SeededRandom };

  static TiebreakPolicy lowest_next_hop() { return TiebreakPolicy(Kind::LowestNextHopAsn, 0); }
  static TiebreakPolicy seeded_random(std::uint64_t seed) { return TiebreakPolicy(Kind::SeededRandom, seed); }

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  bool deterministic() const { return kind_ == Kind::LowestNextHopAsn; }

  // Same policy kind with a stream derived from (seed, parts...). Deterministic
  // policies are returned unchanged.
  TiebreakPolicy derive(std::initializer_list<std::uint64_t> parts) const;

  // Index of the chosen candidate among `count` equally preferred ones that are
  // sorted by next-hop ASN.
  std::size_t choose(AsNumber deciding, std::size_t count) const;

 private:
  TiebreakPolicy(Kind k, std::uint64_t s) : kind_(k), seed_(s) {}
  Kind kind_;
  std::uint64_t seed_;
};

struct Seed {
  AsNumber as;
  std::vector<AsNumber> path;  // initial AS path, path.front() == as
  OriginKind origin;
};

// Chosen route per AS after propagation. Paths are stored as next-hop chains
// ending in a seed, and materialized on request.
class RibOutcome {
 public:
  using Index = Topology::Index;

  bool has_route(Index i) const { return entries_[i].has; }
  RouteClass route_class(Index i) const { return entries_[i].cls; }
  std::size_t path_length(Index i) const { return entries_[i].length; }
  const OriginKind& origin(Index i) const { return seeds_[entries_[i].seed].origin; }
  // Index of the neighbor the route was learned from; nullopt for seeds.
  std::optional<Index> next_hop(Index i) const;

  std::optional<Route> route(Index i) const;
  std::optional<Route> route(AsNumber asn) const;
  std::size_t size() const { return entries_.size(); }

 private:
  friend class Propagator;
  struct Entry {
    std::int32_t next_hop = -1;
    std::int32_t seed = -1;
    std::uint32_t length = 0;
    RouteClass cls = RouteClass::Provider;
    bool has = false;
  };
  const Topology* topology_ = nullptr;
  std::vector<Entry> entries_;
  std::vector<Seed> seeds_;
};

// Gao-Rexford propagation of one prefix announced by every seed jointly.
// Throws InvalidArgument for unknown or duplicate seed ASes and malformed seed paths.
RibOutcome propagate(const Topology& topology, std::span<const Seed> seeds, const TiebreakPolicy& tiebreak);

enum class Classification : std::uint8_t { RoutesToVictim, RoutesToAttacker, NoRoute };
const char* to_string(Classification c);

struct HijackOutcome {
  RibOutcome rib;
  std::vector<Classification> classification;  // by topology index

  Classification at(const Topology& t, AsNumber asn) const { return classification[t.require(asn)]; }
};

// Equally-specific hijack: every victim node originates the prefix; the attacker
// originates it too, or with `rov` forges the legitimate origin one hop behind
// itself to pass origin validation.
HijackOutcome simulate_hijack(const Topology& topology, std::span<const AsNumber> victim_nodes, AsNumber attacker,
                              AsNumber legit_origin, bool rov, const TiebreakPolicy& tiebreak);

}  // namespace sbas
