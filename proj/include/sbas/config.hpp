#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sbas/attack.hpp"
#include "sbas/control.hpp"
#include "sbas/latency.hpp"
#include "sbas/pop_engine.hpp"

namespace sbas {

struct CustomerConfig {
  CustomerId id;
  std::optional<AsNumber> asn;
  std::vector<Prefix> prefixes;
  PopId primary_ingress;
  std::vector<PopId> backup_ingress;
  std::set<SbasCommunity> communities;
  std::optional<IpAddress> vpn_endpoint;
  unsigned prepend = 0;       // extra copies of the origin ASN in announcements
  bool pool_address = false;  // request a single address from the SBAS pool

  IngressChoice ingress() const { return IngressChoice{primary_ingress, backup_ingress}; }
};

struct ConfiguredInternetRoute {
  PopId pop;
  InternetRoute route;
  std::vector<OriginObservation> origin_history;
};

struct BackbonePaths {
  PopId from;
  PopId to;
  std::vector<double> paths_ms;
};

struct LatencyConfig {
  double pop_delay_ms = kDefaultPopDelayMs;
  std::map<CustomerId, double> ingress_ms;  // customer to its ingress PoP
  std::vector<BackbonePaths> backbone;

  // Candidate paths between two PoPs in either direction; empty if unknown.
  std::vector<double> paths(const PopId& a, const PopId& b) const;
};

struct SimulationConfig {
  std::vector<VictimDeployment> deployments;
  std::vector<AsNumber> attackers;  // empty: sample from the topology
  std::optional<std::vector<AsNumber>> sources;
  std::vector<AsNumber> serial_hijackers;
  unsigned trials = 1;
  bool random_tiebreak = false;
  NoRoutePolicy no_route = NoRoutePolicy::Resilient;
};

struct PlacementConfig {
  std::vector<AsNumber> candidates;
  AsNumber legit_origin;
  std::size_t k = 1;
};

// SBAS deployment description. The SBAS sections are optional so one file can
// drive simulations only; `has_sbas()` tells whether they were present.
struct DeploymentConfig {
  std::optional<AsNumber> sbas_asn;
  std::vector<PopConfig> pops;
  std::vector<CustomerConfig> customers;
  std::vector<RoaRecord> roas;
  PopAuthorization authorizations;
  std::optional<Prefix> pool;
  std::vector<ConfiguredInternetRoute> internet_routes;
  std::map<PopId, std::string> locators;
  bool hijack_guard = false;
  SimTime guard_window{60};
  SimTime now{0};

  std::optional<SimulationConfig> simulation;
  std::optional<PlacementConfig> placement;
  std::optional<LatencyConfig> latency;

  bool has_sbas() const { return sbas_asn.has_value(); }
  const PopConfig* find_pop(const PopId& id) const;
  const CustomerConfig* find_customer(const CustomerId& id) const;

  // Secure = customer prefixes + pool; internal = PoP internal prefixes.
  AddressPlan address_plan() const;

  // Throws ConfigError on unknown references, duplicate ids or internal
  // addresses, secure/internal overlap, or a secure VPN endpoint.
  void validate() const;
};

DeploymentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
DeploymentConfig load_config(const std::filesystem::path& path);

// CSV `prefix,origin,max_length`; a header row is optional.
std::vector<RoaRecord> parse_roa_csv(const std::string& text);
std::vector<RoaRecord> load_roa_csv(const std::filesystem::path& path);

}  // namespace sbas
