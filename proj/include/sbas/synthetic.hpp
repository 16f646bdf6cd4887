#pragma once

#include <cstdint>

#include "sbas/topology.hpp"

namespace sbas {

// Hierarchical Internet-like graph: a peered tier-1 clique, then ASes that attach
// to 1-3 earlier providers with preferential attachment, plus lateral peering
// among transit ASes. Provider edges always point from an earlier AS to a later
// one, so the customer-provider hierarchy is acyclic. ASNs are 1..n.
struct SyntheticParams {
  std::size_t ases = 1000;
  std::size_t tier1 = 0;          // 0 picks max(3, ases / 100)
  double peer_links_per_as = 0.3;  // lateral peer edges added per AS
  std::uint64_t seed = 1;
};

Topology generate_synthetic(const SyntheticParams& params);

// Small unstructured graph for property tests: each pair i < j becomes a
// provider edge (i provides j) with `p_provider` or a peer edge with `p_peer`.
// ASNs are 1..n; isolated ASes are dropped since topologies are edge-defined.
Topology generate_random(std::size_t n, double p_provider, double p_peer, std::uint64_t seed);

}  // namespace sbas
