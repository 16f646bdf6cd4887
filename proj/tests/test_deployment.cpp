#include <gtest/gtest.h>

#include <random>

#include "random_config.hpp"
#include "sbas/config.hpp"
#include "sbas/deployment.hpp"

using namespace sbas;

namespace {

const char* kFig = R"({
  "sbas_asn": 64500,
  "pops": [
    {"id": "P1", "internal_prefix": "10.0.1.0/24", "internet_peers": [3356]},
    {"id": "P2", "internal_prefix": "10.0.2.0/24", "internet_peers": [174]},
    {"id": "P3", "internal_prefix": "10.0.3.0/24", "internet_peers": [2914]}
  ],
  "customers": [
    {"id": "A", "asn": 65001, "prefixes": ["1.0.0.0/24"], "primary_ingress": "P2", "backup_ingress": ["P3"]},
    {"id": "C", "asn": 65003, "prefixes": ["3.0.0.0/24"], "primary_ingress": "P1", "communities": ["sbas-only"]},
    {"id": "D", "primary_ingress": "P1", "pool_address": true},
    {"id": "E", "asn": 65005, "prefixes": ["5.0.0.0/24"], "primary_ingress": "P3"}
  ],
  "roas": [{"prefix": "1.0.0.0/24", "origin": 65001, "max_length": 24},
           {"prefix": "3.0.0.0/24", "origin": 65003, "max_length": 24},
           {"prefix": "5.0.0.0/24", "origin": 65099, "max_length": 24}],
  "pool": "2.0.0.0/24",
  "internet_routes": [{"pop": "P1", "prefix": "8.0.0.0/8", "neighbor": 3356, "as_path_length": 3},
                      {"pop": "P2", "prefix": "8.0.0.0/8", "neighbor": 174, "as_path_length": 2},
                      {"pop": "P2", "prefix": "1.0.0.128/25", "neighbor": 666, "as_path_length": 1}]
})";

const EgressRecord* find(const ControlPlaneRun& run, const char* prefix, const char* pop) {
  for (const auto& e : run.egress) {
    if (e.update.prefix == Prefix::parse(prefix) && e.at_pop == PopId{pop}) return &e;
  }
  return nullptr;
}

}  // namespace

TEST(ControlPlane, EndToEnd) {
  auto run = run_control_plane(parse_config(kFig));
  EXPECT_TRUE(run.violations.empty()) << run.violations.front();

  ASSERT_EQ(run.ingress.size(), 3U);
  for (const auto& r : run.ingress) {
    if (r.customer == "E") {
      EXPECT_EQ(r.rejected, RejectReason::OriginMismatch);
    } else {
      EXPECT_FALSE(r.rejected);
    }
  }
  EXPECT_EQ(run.pool_assignments.at("D"), IpAddress::parse("2.0.0.1"));

  // A's prefix goes out at every PoP with the SBAS ASN in front of the customer origin.
  const EgressRecord* a1 = find(run, "1.0.0.0/24", "P1");
  ASSERT_TRUE(a1);
  EXPECT_EQ(a1->targets.internet, std::vector<AsNumber>{AsNumber(3356)});
  ASSERT_TRUE(a1->external);
  EXPECT_EQ(a1->external->as_path, (std::vector<AsNumber>{AsNumber(64500), AsNumber(65001)}));
  EXPECT_EQ(a1->targets.customers, (std::vector<CustomerId>{"C", "D"}));

  // C is SBAS-only: delivered to customers, never to Internet peers.
  for (const char* pop : {"P1", "P2", "P3"}) {
    const EgressRecord* c = find(run, "3.0.0.0/24", pop);
    ASSERT_TRUE(c);
    EXPECT_TRUE(c->targets.internet.empty());
    EXPECT_FALSE(c->external);
  }
  const EgressRecord* pool = find(run, "2.0.0.1/32", "P3");
  ASSERT_TRUE(pool);
  EXPECT_EQ(pool->external->as_path, std::vector<AsNumber>{AsNumber(64500)});

  // Tables at P2: remote secure routes, local customer, and the hijacked
  // more-specific Internet route is dropped instead of shadowing A's prefix.
  const PopState& p2 = run.pops.at(PopId{"P2"});
  EXPECT_EQ(nexthop_kind(p2.tables.lookup(IpAddress::parse("1.0.0.200"))->next_hop), std::string("customer"));
  EXPECT_EQ(std::get<RemotePop>(p2.tables.lookup(IpAddress::parse("2.0.0.1"))->next_hop).pop, PopId{"P1"});
  EXPECT_FALSE(p2.tables.table(Tier::Secure).lookup(IpAddress::parse("5.0.0.1")));
  const PopState& p1 = run.pops.at(PopId{"P1"});
  auto d = forward(p1, AddressCategory::Secure, IpAddress::parse("8.8.8.8"));
  ASSERT_TRUE(std::holds_alternative<ToInternet>(d)) << describe(d);
  EXPECT_EQ(std::get<ToInternet>(d).egress_pop, PopId{"P2"});
  EXPECT_EQ(run.updates.size(), 6U);
}

TEST(ControlPlane, FailoverToBackup) {
  auto run = run_control_plane(parse_config(kFig), {PopId{"P2"}});
  EXPECT_TRUE(run.violations.empty());
  EXPECT_EQ(run.pops.size(), 2U);
  for (const auto& r : run.ingress) {
    if (r.customer == "A") EXPECT_EQ(r.ingress, PopId{"P3"});
  }
  const PopState& p1 = run.pops.at(PopId{"P1"});
  EXPECT_EQ(std::get<RemotePop>(p1.tables.lookup(IpAddress::parse("1.0.0.1"))->next_hop).pop, PopId{"P3"});
  auto d = forward(p1, AddressCategory::Secure, IpAddress::parse("8.8.8.8"));
  EXPECT_EQ(std::get<ToInternet>(d).egress_pop, PopId{"P1"});
}

TEST(ControlPlane, NoLiveIngress) {
  auto run = run_control_plane(parse_config(kFig), {PopId{"P2"}, PopId{"P3"}});
  bool warned = false;
  for (const auto& w : run.warnings) warned |= w.find("customer A has no live ingress") != std::string::npos;
  EXPECT_TRUE(warned);
  EXPECT_TRUE(run.violations.empty());
}

TEST(ControlPlane, RandomConfigsHoldInvariants) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 300; ++i) {
    auto j = testgen::random_deployment(rng);
    DeploymentConfig cfg = parse_config(j.dump());
    std::set<PopId> down;
    for (const auto& p : cfg.pops) {
      if (rng() % 5 == 0) down.insert(p.id);
    }
    auto run = run_control_plane(cfg, down);
    EXPECT_TRUE(run.violations.empty()) << j.dump() << "\n" << run.violations.front();
    std::set<Prefix> tagged;
    for (const auto& c : cfg.customers) {
      if (c.communities.contains(SbasCommunity::SbasOnly)) tagged.insert(c.prefixes.begin(), c.prefixes.end());
    }
    for (const auto& e : run.egress) {
      if (tagged.contains(e.update.prefix)) EXPECT_TRUE(e.targets.internet.empty());
    }
  }
}
