#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sbas/config.hpp"
#include "sbas/error.hpp"

using namespace sbas;

namespace {

const char* kBase = R"({
  "sbas_asn": 64500,
  "pops": [
    {"id": "P1", "internal_prefix": "10.0.1.0/24", "internet_peers": [174]},
    {"id": "P2", "internal_prefix": "10.0.2.0/24", "router_address": "10.0.2.9", "customers": ["B"]}
  ],
  "customers": [
    {"id": "A", "asn": 65001, "prefixes": ["1.0.0.0/24"], "primary_ingress": "P1", "backup_ingress": "P2",
     "communities": ["sbas-only"], "vpn_endpoint": "192.168.1.2", "prepend": 2},
    {"id": "B", "asn": "65002", "prefixes": ["3.0.0.0/24"], "primary_ingress": "P1"},
    {"asn": 65003, "primary_ingress": "P2", "pool_address": true}
  ],
  "roas": [{"prefix": "1.0.0.0/24", "origin": 65001, "max_length": 24}, {"prefix": "3.0.0.0/24", "origin": 65002}],
  "authorizations": [{"prefix": "1.0.0.0/24", "pops": ["P1"]}],
  "pool": {"prefix": "2.0.0.0/24"},
  "hijack_guard": {"enabled": true, "window_s": 30, "now_s": 500},
  "latency": {"ingress_ms": {"A": 3}, "backbone": [{"from": "P1", "to": "P2", "paths_ms": [10, 9]}]}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kBase;
  auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Config, ParsesAllSections) {
  DeploymentConfig c = parse_config(kBase);
  ASSERT_TRUE(c.has_sbas());
  EXPECT_EQ(*c.sbas_asn, AsNumber(64500));
  ASSERT_EQ(c.pops.size(), 2U);
  EXPECT_EQ(c.pops[0].internal_address, IpAddress::parse("10.0.1.1"));
  EXPECT_EQ(c.pops[1].internal_address, IpAddress::parse("10.0.2.9"));
  const CustomerConfig* a = c.find_customer("A");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->backup_ingress, std::vector<PopId>{PopId{"P2"}});
  EXPECT_TRUE(a->communities.contains(SbasCommunity::SbasOnly));
  EXPECT_EQ(a->prepend, 2U);
  EXPECT_TRUE(c.find_customer("65003"));
  EXPECT_EQ(c.roas.size(), 2U);
  EXPECT_EQ(c.roas[1].max_length, 24U);
  EXPECT_FALSE(c.authorizations.allows(Prefix::parse("1.0.0.0/24"), PopId{"P2"}));
  EXPECT_TRUE(c.hijack_guard);
  EXPECT_EQ(c.guard_window, SimTime(30));
  EXPECT_EQ(c.now, SimTime(500));
  ASSERT_TRUE(c.latency);
  EXPECT_EQ(c.latency->pop_delay_ms, 0.83);
  EXPECT_EQ(c.latency->paths(PopId{"P2"}, PopId{"P1"}), (std::vector<double>{10, 9}));
  EXPECT_FALSE(c.simulation);

  // Ingress PoPs attach customers implicitly, listed ones gain their ASN.
  auto attached = [&](const PopConfig& p, const char* id) {
    for (const auto& x : p.customers) {
      if (x.id == id) return x.asn;
    }
    return std::optional<AsNumber>{};
  };
  EXPECT_EQ(attached(c.pops[0], "A"), AsNumber(65001));
  EXPECT_EQ(attached(c.pops[1], "A"), AsNumber(65001));
  EXPECT_EQ(attached(c.pops[1], "B"), AsNumber(65002));
}

TEST(Config, AddressPlan) {
  DeploymentConfig c = parse_config(kBase);
  AddressPlan plan = c.address_plan();
  EXPECT_EQ(plan.classify(IpAddress::parse("2.0.0.7")), AddressCategory::Secure);
  EXPECT_EQ(plan.classify(IpAddress::parse("1.0.0.1")), AddressCategory::Secure);
  EXPECT_EQ(plan.classify(IpAddress::parse("10.0.1.1")), AddressCategory::Internal);
  EXPECT_EQ(plan.classify(IpAddress::parse("8.8.8.8")), AddressCategory::Global);
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("{"), ConfigError);
  EXPECT_THROW(parse_config("[]"), ConfigError);
  EXPECT_THROW(parse_config(with(R"("id": "P2", "internal_prefix": "10.0.2.0/24")",
                                 R"("id": "P1", "internal_prefix": "10.0.2.0/24")")),
               ConfigError);
  EXPECT_THROW(parse_config(with("10.0.2.0/24", "10.0.0.0/16")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("router_address": "10.0.2.9")", R"("router_address": "10.0.3.9")")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("primary_ingress": "P1", "backup)", R"("primary_ingress": "P7", "backup)")),
               ConfigError);
  EXPECT_THROW(parse_config(with(R"("customers": ["B"])", R"("customers": ["Z"])")), ConfigError);
  EXPECT_THROW(parse_config(with("192.168.1.2", "2.0.0.9")), ConfigError);
  EXPECT_THROW(parse_config(with("192.168.1.2", "1.0.0.9")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("pool": {"prefix": "2.0.0.0/24"},)", "")), ConfigError);
  EXPECT_THROW(parse_config(with("1.0.0.0/24\"], \"primary", "10.0.1.0/25\"], \"primary")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("communities": ["sbas-only"])", R"("communities": ["no-export"])")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("pops": ["P1"])", R"("pops": ["P9"])")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("sbas_asn": 64500)", R"("sbas_asn": 0)")), ConfigError);
  EXPECT_THROW(parse_config(with(R"("origin": 65001, "max_length": 24)", R"("origin": 65001, "max_length": 20)")),
               ConfigError);
}

TEST(Config, SimulationAndPlacementSections) {
  DeploymentConfig c = parse_config(R"({
    "simulation": {"deployments": [{"id": "b", "nodes": [5], "legit_origin": 5},
                                   {"id": "s", "nodes": [5, 7], "legit_origin": 5}],
                   "attackers": [9, 11], "sources": [1, 2], "trials": 4, "tiebreak": "random",
                   "no_route": "hijacked", "serial_hijackers": [9]},
    "placement": {"candidates": [1, 2, 3], "legit_origin": 5, "k": 2}
  })");
  EXPECT_FALSE(c.has_sbas());
  ASSERT_TRUE(c.simulation);
  EXPECT_EQ(c.simulation->deployments.size(), 2U);
  EXPECT_EQ(c.simulation->deployments[1].nodes.size(), 2U);
  EXPECT_EQ(c.simulation->trials, 4U);
  EXPECT_TRUE(c.simulation->random_tiebreak);
  EXPECT_EQ(c.simulation->no_route, NoRoutePolicy::Hijacked);
  EXPECT_EQ(c.simulation->sources->size(), 2U);
  ASSERT_TRUE(c.placement);
  EXPECT_EQ(c.placement->k, 2U);
  EXPECT_THROW(parse_config(R"({"simulation": {"deployments": [], "tiebreak": "coin"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"simulation": {"deployments": [{"id": "x", "nodes": [1]}]}})"), ConfigError);
}

TEST(RoaCsv, ParseAndErrors) {
  auto roas = parse_roa_csv("prefix,origin,max_length\n1.0.0.0/24,65001,24\r\n# note\n\n2.0.0.0/16,7,20\n");
  ASSERT_EQ(roas.size(), 2U);
  EXPECT_EQ(roas[1].origin, AsNumber(7));
  EXPECT_EQ(roas[1].max_length, 20U);
  EXPECT_THROW(parse_roa_csv("1.0.0.0/24,65001"), ParseError);
  EXPECT_THROW(parse_roa_csv("1.0.0.0/24,65001,x"), ParseError);
  EXPECT_THROW(parse_roa_csv("1.0.0.0/24,65001,16"), ParseError);
}

TEST(Config, RoaCsvRelativeToConfig) {
  auto dir = std::filesystem::temp_directory_path() / "sbas_cfg_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "r.csv") << "9.9.0.0/16,65001,24\n";
  std::string text = with(R"("roas": [)", R"("roa_csv": "r.csv", "roas": [)");
  std::ofstream(dir / "c.json") << text;
  DeploymentConfig c = load_config(dir / "c.json");
  EXPECT_EQ(c.roas.size(), 3U);
  try {
    load_config(dir / "missing.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("missing.json"), std::string::npos);
  }
}
