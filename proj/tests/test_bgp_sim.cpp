#include <gtest/gtest.h>

#include <random>
#include <set>
#include <span>

#include "oracle.hpp"
#include "sbas/bgp_sim.hpp"
#include "sbas/error.hpp"

using namespace sbas;

namespace {

AsNumber as(std::uint64_t v) { return AsNumber(v); }
std::vector<AsNumber> path(std::initializer_list<std::uint64_t> v) {
  std::vector<AsNumber> out;
  for (auto x : v) out.push_back(as(x));
  return out;
}
Topology topo(const std::string& text) { return parse_relationships(text); }

RibOutcome single(const Topology& t, std::uint64_t origin) {
  std::vector<Seed> seeds{{as(origin), {as(origin)}, OriginKind::victim(as(origin))}};
  return propagate(t, seeds, TiebreakPolicy::lowest_next_hop());
}

bool has(std::span<const Topology::Index> v, Topology::Index x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Valley-free: zero or more climbs, at most one peer hop, then only descents.
bool valley_free(const Topology& t, const std::vector<AsNumber>& p, std::size_t hops) {
  bool descending = false;
  for (std::size_t i = 0; i < hops; ++i) {
    auto a = t.require(p[i]);
    auto b = t.require(p[i + 1]);
    if (has(t.providers(a), b)) {
      if (descending) return false;
    } else if (has(t.peers(a), b)) {
      if (descending) return false;
      descending = true;
    } else if (has(t.customers(a), b)) {
      descending = true;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST(Propagate, SingleEdge) {
  Topology t = topo("1|2|-1");
  auto rib = single(t, 2);
  auto r = rib.route(as(1));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->route_class, RouteClass::Customer);
  EXPECT_EQ(r->as_path, path({1, 2}));
  EXPECT_EQ(rib.route(as(2))->route_class, RouteClass::Origin);
}

TEST(Propagate, ChainWithPeer) {
  // A=1 prov B=2, B prov C=3, A peer D=4
  Topology t = topo("1|2|-1\n2|3|-1\n1|4|0");
  auto rib = single(t, 3);
  EXPECT_EQ(rib.route(as(2))->as_path, path({2, 3}));
  EXPECT_EQ(rib.route(as(2))->route_class, RouteClass::Customer);
  EXPECT_EQ(rib.route(as(1))->as_path, path({1, 2, 3}));
  EXPECT_EQ(rib.route(as(1))->route_class, RouteClass::Customer);
  EXPECT_EQ(rib.route(as(4))->as_path, path({4, 1, 2, 3}));
  EXPECT_EQ(rib.route(as(4))->route_class, RouteClass::Peer);
}

TEST(Propagate, ClassBeatsLength) {
  // S=1 prov M=2, M prov M2=3, M2 prov O=4, S peer E=5, E prov O
  Topology t = topo("1|2|-1\n2|3|-1\n3|4|-1\n1|5|0\n5|4|-1");
  auto rib = single(t, 4);
  auto r = rib.route(as(1));
  EXPECT_EQ(r->route_class, RouteClass::Customer);
  EXPECT_EQ(r->as_path, path({1, 2, 3, 4}));
}

TEST(Propagate, PeerRoutesAreNotExportedToPeersOrProviders) {
  // 1 peer 2, 2 peer 3, 4 prov 2; origin 1
  Topology t = topo("1|2|0\n2|3|0\n4|2|-1");
  auto rib = single(t, 1);
  EXPECT_EQ(rib.route(as(2))->route_class, RouteClass::Peer);
  EXPECT_FALSE(rib.route(as(3)));
  EXPECT_FALSE(rib.route(as(4)));
}

TEST(Propagate, ProviderRoutesDescend) {
  Topology t = topo("1|2|-1\n1|3|-1\n3|4|-1");
  auto rib = single(t, 2);
  EXPECT_EQ(rib.route(as(4))->as_path, path({4, 3, 1, 2}));
  EXPECT_EQ(rib.route(as(4))->route_class, RouteClass::Provider);
}

TEST(Propagate, LowestNextHopTiebreak) {
  Topology t = topo("5|9|-1\n3|9|-1\n1|5|-1\n1|3|-1");
  auto rib = single(t, 9);
  EXPECT_EQ(rib.route(as(1))->as_path, path({1, 3, 9}));
}

TEST(Propagate, PrependedSeedCountsTowardLength) {
  Topology t = topo("1|2|-1\n1|3|-1");
  std::vector<Seed> seeds{{as(2), path({2, 2, 2}), OriginKind::victim(as(2))},
                          {as(3), path({3}), OriginKind::attacker(as(3))}};
  auto rib = propagate(t, seeds, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(rib.route(as(1))->as_path, path({1, 3}));
  EXPECT_EQ(rib.path_length(t.require(as(2))), 3U);
}

TEST(Propagate, Errors) {
  Topology t = topo("1|2|-1");
  std::vector<Seed> unknown{{as(7), {as(7)}, OriginKind::victim(as(7))}};
  EXPECT_THROW(propagate(t, unknown, TiebreakPolicy::lowest_next_hop()), InvalidArgument);
  std::vector<Seed> twice{{as(1), {as(1)}, OriginKind::victim(as(1))}, {as(1), {as(1)}, OriginKind::victim(as(1))}};
  EXPECT_THROW(propagate(t, twice, TiebreakPolicy::lowest_next_hop()), InvalidArgument);
  std::vector<Seed> bad_path{{as(1), {as(2)}, OriginKind::victim(as(1))}};
  EXPECT_THROW(propagate(t, bad_path, TiebreakPolicy::lowest_next_hop()), InvalidArgument);
}

TEST(SimulateHijack, CustomerRouteToAttackerWins) {
  // S=1 prov X=2, V=3 prov S
  Topology t = topo("1|2|-1\n3|1|-1");
  auto h = simulate_hijack(t, path({3}), as(2), as(3), false, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h.at(t, as(1)), Classification::RoutesToAttacker);
}

TEST(SimulateHijack, RovLengthensForgedPath) {
  // S=1 prov X=2, S prov V=3; without ROV the lower next hop (the attacker) wins the tie.
  Topology t = topo("1|2|-1\n1|3|-1");
  auto rov = simulate_hijack(t, path({3}), as(2), as(3), true, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(rov.at(t, as(1)), Classification::RoutesToVictim);
  EXPECT_EQ(rov.rib.route(as(2))->as_path, path({2, 3}));
  auto plain = simulate_hijack(t, path({3}), as(2), as(3), false, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(plain.at(t, as(1)), Classification::RoutesToAttacker);
}

TEST(SimulateHijack, TwoAdjacentVictimNodes) {
  // V1=2, V2=3 customers of S=1; attacker X=4 behind provider P=5 of S.
  Topology t = topo("1|2|-1\n1|3|-1\n5|1|-1\n5|4|-1");
  auto h = simulate_hijack(t, path({2, 3}), as(4), as(2), false, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h.at(t, as(1)), Classification::RoutesToVictim);
}

TEST(SimulateHijack, LegitOriginRejectsForgedPath) {
  // Legit origin 3 is not a victim node here and only hears the attacker.
  Topology t = topo("3|2|-1\n1|3|-1");
  auto h = simulate_hijack(t, path({1}), as(2), as(3), true, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h.at(t, as(3)), Classification::RoutesToVictim);
  EXPECT_EQ(h.rib.route(as(3))->as_path, path({3, 1}));
}

TEST(SimulateHijack, NoRouteForUnreachable) {
  Topology t = topo("1|2|-1\n3|4|-1");
  auto h = simulate_hijack(t, path({2}), as(4), as(2), false, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h.at(t, as(1)), Classification::RoutesToVictim);
  EXPECT_EQ(h.at(t, as(3)), Classification::RoutesToAttacker);
  Topology t2 = topo("1|2|0\n2|3|0\n5|4|-1");
  auto h2 = simulate_hijack(t2, path({1}), as(4), as(1), false, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h2.at(t2, as(3)), Classification::NoRoute);
}

TEST(SimulateHijack, Errors) {
  Topology t = topo("1|2|-1");
  auto lowest = TiebreakPolicy::lowest_next_hop();
  EXPECT_THROW(simulate_hijack(t, path({2}), as(2), as(2), false, lowest), InvalidArgument);
  EXPECT_THROW(simulate_hijack(t, path({2}), as(9), as(2), false, lowest), InvalidArgument);
  EXPECT_THROW(simulate_hijack(t, path({9}), as(1), as(9), false, lowest), InvalidArgument);
  EXPECT_THROW(simulate_hijack(t, {}, as(1), as(2), false, lowest), InvalidArgument);
}

TEST(SeededRandom, ReproducibleAndVaried) {
  // Many equal-length customer routes toward a single provider.
  std::string text;
  for (int i = 2; i <= 21; ++i) text += "1|" + std::to_string(i) + "|-1\n";
  Topology t = topo(text);
  std::vector<AsNumber> victims;
  for (int i = 2; i <= 11; ++i) victims.push_back(as(i));
  std::set<std::uint64_t> picks;
  for (std::uint64_t s = 0; s < 64; ++s) {
    auto tb = TiebreakPolicy::seeded_random(s);
    auto a = simulate_hijack(t, victims, as(15), as(2), false, tb);
    auto b = simulate_hijack(t, victims, as(15), as(2), false, tb);
    EXPECT_EQ(a.rib.route(as(1))->as_path, b.rib.route(as(1))->as_path);
    picks.insert(a.rib.route(as(1))->as_path[1].value());
  }
  EXPECT_GT(picks.size(), 5U);
  EXPECT_EQ(TiebreakPolicy::lowest_next_hop().derive({1, 2}).kind(), TiebreakPolicy::Kind::LowestNextHopAsn);
  EXPECT_NE(TiebreakPolicy::seeded_random(3).derive({1}).seed(), TiebreakPolicy::seeded_random(3).derive({2}).seed());
}

class OracleProperty : public ::testing::TestWithParam<int> {};

TEST_P(OracleProperty, MatchesStableStateAndPathEnumeration) {
  std::mt19937_64 rng(1000 + GetParam());
  for (int iter = 0; iter < 50; ++iter) {
    std::size_t n = 3 + rng() % 10;
    Topology t = oracle::random_topology(rng, n, 0.25, 0.15);
    const auto& asns = t.asns();
    if (asns.size() < 2) continue;
    AsNumber attacker = asns[rng() % asns.size()];
    std::vector<AsNumber> victims;
    for (AsNumber a : asns) {
      if (a != attacker && rng() % 4 == 0) victims.push_back(a);
    }
    if (victims.empty()) victims.push_back(attacker == asns[0] ? asns[1] : asns[0]);
    AsNumber legit = victims[0];
    if (rng() % 3 == 0) {
      for (AsNumber a : asns) {
        if (a != attacker && std::find(victims.begin(), victims.end(), a) == victims.end()) legit = a;
      }
    }
    bool rov = rng() % 2;

    auto h = simulate_hijack(t, victims, attacker, legit, rov, TiebreakPolicy::lowest_next_hop());
    auto seeds = oracle::hijack_seeds(victims, attacker, legit, rov);
    auto stable = oracle::stable_state(t, seeds);
    ASSERT_TRUE(stable);
    auto summary = oracle::enumerate_valley_free(t, seeds);
    // A legitimate origin outside the seeds rejects every forged path as a loop,
    // and may be left without a route; path enumeration cannot see that.
    bool path_level = !rov || std::find(victims.begin(), victims.end(), legit) != victims.end();
    for (AsNumber a : asns) {
      auto got = h.rib.route(a);
      auto it = stable->find(a);
      ASSERT_EQ(got.has_value(), it != stable->end()) << "AS " << a.value();
      if (!path_level) {
        if (got) EXPECT_EQ(got->route_class, it->second.cls);
        if (!got) EXPECT_EQ(h.at(t, a), Classification::NoRoute);
        if (got) EXPECT_EQ(got->as_path, it->second.path);
        continue;
      }
      ASSERT_EQ(got.has_value(), summary[a].best_class.has_value()) << "AS " << a.value();
      if (!got) {
        EXPECT_EQ(h.at(t, a), Classification::NoRoute);
        continue;
      }
      EXPECT_EQ(got->as_path, it->second.path) << "AS " << a.value();
      EXPECT_EQ(got->route_class, it->second.cls);
      EXPECT_EQ(got->route_class, *summary[a].best_class);
      if (summary[a].min_length) EXPECT_EQ(got->length(), *summary[a].min_length);
      EXPECT_EQ(h.at(t, a) == Classification::RoutesToAttacker, it->second.attacker);
      std::size_t hops = got->length() - (got->origin.is_attacker() && rov ? 2 : 1);
      EXPECT_TRUE(valley_free(t, got->as_path, hops)) << "AS " << a.value();
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleProperty, ::testing::Range(0, 6));

TEST(PropagateProperty, VictimRoutesStayPolicyValidUnderAttack) {
  // A victim-bound route chosen during an attack is one the victims alone could
  // have offered: valley-free, and its tail is the next hop's own chosen route.
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    Topology t = oracle::random_topology(rng, 3 + rng() % 15, 0.25, 0.15);
    const auto& asns = t.asns();
    AsNumber v = asns[rng() % asns.size()];
    AsNumber x = v;
    while (x == v) x = asns[rng() % asns.size()];
    auto h = simulate_hijack(t, {&v, 1}, x, v, rng() % 2, TiebreakPolicy::lowest_next_hop());
    auto alone = oracle::enumerate_valley_free(t, {{v, {v}, false}});
    for (AsNumber a : asns) {
      auto r = h.rib.route(a);
      if (!r || r->origin.is_attacker()) continue;
      EXPECT_TRUE(alone[a].best_class.has_value());
      EXPECT_EQ(r->as_path.back(), v);
      EXPECT_TRUE(valley_free(t, r->as_path, r->length() - 1));
      if (r->length() > 1) EXPECT_EQ(h.rib.route(r->as_path[1])->as_path,
                                     std::vector<AsNumber>(r->as_path.begin() + 1, r->as_path.end()));
    }
  }
}

TEST(PropagateProperty, RovAttackerSeedHasLengthTwo) {
  Topology t = topo("1|2|-1\n1|3|-1");
  auto h = simulate_hijack(t, path({3}), as(2), as(3), true, TiebreakPolicy::lowest_next_hop());
  EXPECT_EQ(h.rib.path_length(t.require(as(2))), 2U);
  EXPECT_EQ(h.rib.route(as(2))->route_class, RouteClass::Origin);
}

TEST(PropagateProperty, Deterministic) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    Topology t = oracle::random_topology(rng, 20, 0.2, 0.1);
    auto a = simulate_hijack(t, std::vector<AsNumber>{t.asns()[1]}, t.asns()[0], t.asns()[1], true,
                             TiebreakPolicy::lowest_next_hop());
    auto b = simulate_hijack(t, std::vector<AsNumber>{t.asns()[1]}, t.asns()[0], t.asns()[1], true,
                             TiebreakPolicy::lowest_next_hop());
    for (AsNumber s : t.asns()) EXPECT_EQ(a.rib.route(s).has_value() ? a.rib.route(s)->as_path : std::vector<AsNumber>{},
                                          b.rib.route(s).has_value() ? b.rib.route(s)->as_path : std::vector<AsNumber>{});
  }
}
