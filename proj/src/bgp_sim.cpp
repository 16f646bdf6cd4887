#include "sbas/bgp_sim.hpp"

#include <algorithm>
#include <unordered_set>

#include "sbas/error.hpp"
#include "sbas/rng.hpp"

namespace sbas {

const char* to_string(RouteClass c) {
  switch (c) {
    case RouteClass::Origin: return "origin";
    case RouteClass::Customer: return "customer";
    case RouteClass::Peer: return "peer";
    case RouteClass::Provider: return "provider";
  }
  return "?";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::RoutesToVictim: return "victim";
    case Classification::RoutesToAttacker: return "attacker";
    case Classification::NoRoute: return "none";
  }
  return "?";
}

TiebreakPolicy TiebreakPolicy::derive(std::initializer_list<std::uint64_t> parts) const {
  if (deterministic()) return *this;
  std::uint64_t s = seed_;
  for (auto p : parts) s = derive_seed({s, p});
  return seeded_random(s);
}

std::size_t TiebreakPolicy::choose(AsNumber deciding, std::size_t count) const {
  if (count <= 1 || kind_ == Kind::LowestNextHopAsn) return 0;
  return static_cast<std::size_t>(bounded(derive_seed({seed_, deciding.value()}), count));
}

std::optional<RibOutcome::Index> RibOutcome::next_hop(Index i) const {
  if (entries_[i].next_hop < 0) return std::nullopt;
  return static_cast<Index>(entries_[i].next_hop);
}

std::optional<Route> RibOutcome::route(Index i) const {
  const Entry& e = entries_[i];
  if (!e.has) return std::nullopt;
  Route r;
  r.route_class = e.cls;
  r.origin = seeds_[e.seed].origin;
  r.as_path.reserve(e.length);
  Index cur = i;
  while (entries_[cur].next_hop >= 0) {
    r.as_path.push_back(topology_->asn(cur));
    cur = static_cast<Index>(entries_[cur].next_hop);
  }
  const auto& tail = seeds_[e.seed].path;
  r.as_path.insert(r.as_path.end(), tail.begin(), tail.end());
  return r;
}

std::optional<Route> RibOutcome::route(AsNumber asn) const { return route(topology_->require(asn)); }

class Propagator {
 public:
  using Index = Topology::Index;

  Propagator(const Topology& t, std::span<const Seed> seeds, const TiebreakPolicy& tb) : topo_(t), tiebreak_(tb) {
    out_.topology_ = &t;
    out_.entries_.resize(t.size());
    out_.seeds_.assign(seeds.begin(), seeds.end());
    candidates_.resize(t.size());
    for (std::size_t s = 0; s < out_.seeds_.size(); ++s) {
      const Seed& seed = out_.seeds_[s];
      Index i = topo_.require(seed.as);
      if (seed.path.empty() || seed.path.front() != seed.as) {
        throw InvalidArgument("seed path for AS " + seed.as.to_string() + " must start with that AS");
      }
      auto& e = out_.entries_[i];
      if (e.has) throw InvalidArgument("AS " + seed.as.to_string() + " seeded twice");
      e.has = true;
      e.cls = RouteClass::Origin;
      e.seed = static_cast<std::int32_t>(s);
      e.length = static_cast<std::uint32_t>(seed.path.size());
      seed_paths_.emplace_back(seed.path.begin(), seed.path.end());
    }
  }

  RibOutcome run() {
    customer_stage();
    peer_stage();
    provider_stage();
    return std::move(out_);
  }

 private:
  using Level = std::vector<Index>;

  // True if `x` already appears on the route currently held by `holder`.
  bool on_path(Index holder, Index x) const {
    Index cur = holder;
    const auto& entries = out_.entries_;
    while (entries[cur].next_hop >= 0) {
      if (cur == x) return true;
      cur = static_cast<Index>(entries[cur].next_hop);
    }
    return seed_paths_[entries[cur].seed].contains(topo_.asn(x));
  }

  // Picks among `cands` (all of equal class and length) after loop filtering.
  bool decide(Index x, std::vector<Index>& cands, RouteClass cls) {
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::erase_if(cands, [&](Index u) { return on_path(u, x); });
    if (cands.empty()) return false;
    Index pick = cands[tiebreak_.choose(topo_.asn(x), cands.size())];
    auto& e = out_.entries_[x];
    const auto& from = out_.entries_[pick];
    e.has = true;
    e.cls = cls;
    e.next_hop = static_cast<std::int32_t>(pick);
    e.seed = from.seed;
    e.length = from.length + 1;
    return true;
  }

  static void place(std::vector<Level>& levels, std::size_t len, Index i) {
    if (levels.size() <= len) levels.resize(len + 1);
    levels[len].push_back(i);
  }

  // Customer routes climb customer->provider edges in order of path length.
  void customer_stage() {
    std::vector<Level> levels;
    for (Index i = 0; i < topo_.size(); ++i) {
      if (out_.entries_[i].has) place(levels, out_.entries_[i].length, i);
    }
    run_levels(levels, RouteClass::Customer, [this](Index u) { return topo_.providers(u); });
  }

  // Holders of origin/customer routes export them once across each peer edge.
  void peer_stage() {
    for (Index x = 0; x < topo_.size(); ++x) {
      if (out_.entries_[x].has) continue;
      std::uint32_t best = UINT32_MAX;
      auto& cands = candidates_[x];
      cands.clear();
      for (Index y : topo_.peers(x)) {
        const auto& e = out_.entries_[y];
        // Routes granted earlier in this stage are peer-learned and rank below 2.
        if (!e.has || selection_rank(e.cls) != 2 || on_path(y, x)) continue;
        if (e.length < best) {
          best = e.length;
          cands.clear();
        }
        if (e.length == best) cands.push_back(y);
      }
      if (!cands.empty()) decide(x, cands, RouteClass::Peer);
    }
  }

  // Every route descends provider->customer edges in order of path length.
  void provider_stage() {
    std::vector<Level> levels;
    for (Index i = 0; i < topo_.size(); ++i) {
      if (out_.entries_[i].has) place(levels, out_.entries_[i].length, i);
    }
    run_levels(levels, RouteClass::Provider, [this](Index u) { return topo_.customers(u); });
  }

  // Expands level L into neighbors that still lack a route and decides them at L+1.
  template <typename Neighbors>
  void run_levels(std::vector<Level>& levels, RouteClass cls, Neighbors neighbors) {
    std::vector<Index> touched;
    for (std::size_t len = 0; len < levels.size(); ++len) {
      touched.clear();
      for (Index u : levels[len]) {
        for (Index p : neighbors(u)) {
          if (out_.entries_[p].has) continue;
          if (candidates_[p].empty()) touched.push_back(p);
          candidates_[p].push_back(u);
        }
      }
      std::sort(touched.begin(), touched.end());
      for (Index p : touched) {
        if (decide(p, candidates_[p], cls)) place(levels, len + 1, p);
        candidates_[p].clear();
      }
    }
  }

  const Topology& topo_;
  TiebreakPolicy tiebreak_;
  RibOutcome out_;
  std::vector<std::vector<Index>> candidates_;
  std::vector<std::unordered_set<AsNumber>> seed_paths_;
};

RibOutcome propagate(const Topology& topology, std::span<const Seed> seeds, const TiebreakPolicy& tiebreak) {
  return Propagator(topology, seeds, tiebreak).run();
}

HijackOutcome simulate_hijack(const Topology& topology, std::span<const AsNumber> victim_nodes, AsNumber attacker,
                              AsNumber legit_origin, bool rov, const TiebreakPolicy& tiebreak) {
  if (victim_nodes.empty()) throw InvalidArgument("victim deployment has no announcement nodes");
  if (std::find(victim_nodes.begin(), victim_nodes.end(), attacker) != victim_nodes.end()) {
    throw InvalidArgument("attacker AS " + attacker.to_string() + " is one of the victim nodes");
  }
  topology.require(attacker);
  topology.require(legit_origin);

  std::vector<Seed> seeds;
  seeds.reserve(victim_nodes.size() + 1);
  for (AsNumber v : victim_nodes) seeds.push_back(Seed{v, {v}, OriginKind::victim(v)});
  Seed bad{attacker, {attacker}, OriginKind::attacker(attacker)};
  if (rov) bad.path.push_back(legit_origin);
  seeds.push_back(std::move(bad));

  HijackOutcome out{propagate(topology, seeds, tiebreak), {}};
  out.classification.resize(topology.size(), Classification::NoRoute);
  for (Topology::Index i = 0; i < topology.size(); ++i) {
    if (!out.rib.has_route(i)) continue;
    out.classification[i] =
        out.rib.origin(i).is_attacker() ? Classification::RoutesToAttacker : Classification::RoutesToVictim;
  }
  return out;
}

}  // namespace sbas
