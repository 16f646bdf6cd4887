#include "sbas/synthetic.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "sbas/error.hpp"
#include "sbas/rng.hpp"

namespace sbas {

Topology generate_synthetic(const SyntheticParams& params) {
  const std::size_t n = params.ases;
  if (n < 2) throw InvalidArgument("synthetic topology needs at least 2 ASes");
  std::size_t tier1 = params.tier1 ? params.tier1 : std::max<std::size_t>(3, n / 100);
  tier1 = std::min(tier1, n);
  Rng rng(derive_seed({params.seed, n, 0x7070}));

  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> related;
  auto link = [&](std::size_t a, std::size_t b, Relationship rel) {
    edges.push_back(Edge{AsNumber(a + 1), AsNumber(b + 1), rel});
    related.emplace(std::min(a, b), std::max(a, b));
  };

  for (std::size_t i = 0; i < tier1; ++i) {
    for (std::size_t j = i + 1; j < tier1; ++j) link(i, j, Relationship::Peer);
  }

  // Attachment weight grows with customer count so a transit core emerges.
  std::vector<std::uint64_t> weight(n, 0);
  for (std::size_t i = 0; i < tier1; ++i) weight[i] = 4;
  std::uint64_t total_weight = 4 * tier1;

  for (std::size_t i = tier1; i < n; ++i) {
    double roll = rng.unit();
    std::size_t want = roll < 0.5 ? 1 : (roll < 0.85 ? 2 : 3);
    want = std::min(want, i);
    std::set<std::size_t> chosen;
    for (int attempt = 0; chosen.size() < want && attempt < 64; ++attempt) {
      std::uint64_t r = rng.below(total_weight);
      std::size_t pick = 0;
      while (r >= weight[pick]) r -= weight[pick++];
      chosen.insert(pick);
    }
    for (std::size_t p : chosen) {
      link(p, i, Relationship::ProviderToCustomer);
      weight[p] += 2;
      total_weight += 2;
    }
    weight[i] = 1;
    total_weight += 1;
  }

  std::vector<std::size_t> transit;
  for (std::size_t i = tier1; i < n; ++i) {
    if (weight[i] > 1) transit.push_back(i);
  }
  auto lateral = static_cast<std::size_t>(params.peer_links_per_as * static_cast<double>(n));
  for (std::size_t k = 0; k < lateral && transit.size() >= 2; ++k) {
    std::size_t a = transit[rng.below(transit.size())];
    // Half the lateral links go to stubs, which is common at IXPs.
    std::size_t b = rng.chance(0.5) ? transit[rng.below(transit.size())] : tier1 + rng.below(n - tier1);
    if (a == b || related.contains({std::min(a, b), std::max(a, b)})) continue;
    link(a, b, Relationship::Peer);
  }
  return Topology::from_edges(edges);
}

Topology generate_random(std::size_t n, double p_provider, double p_peer, std::uint64_t seed) {
  Rng rng(derive_seed({seed, n, 0x4242}));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double r = rng.unit();
      if (r < p_provider) {
        edges.push_back(Edge{AsNumber(i + 1), AsNumber(j + 1), Relationship::ProviderToCustomer});
      } else if (r < p_provider + p_peer) {
        edges.push_back(Edge{AsNumber(i + 1), AsNumber(j + 1), Relationship::Peer});
      }
    }
  }
  return Topology::from_edges(edges);
}

}  // namespace sbas
