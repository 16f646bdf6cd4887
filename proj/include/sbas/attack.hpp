#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbas/bgp_sim.hpp"
#include "sbas/topology.hpp"

namespace sbas {

// A way of announcing the victim prefix: the announcing ASes plus the AS that
// legitimately owns it (used as the forged origin under ROV).
struct VictimDeployment {
  std::string id;
  std::vector<AsNumber> nodes;
  AsNumber legit_origin;
};

// Whether a source left without any route counts as resilient (the attacker
// failed to attract it) or as hijacked.
enum class NoRoutePolicy : std::uint8_t { Resilient, Hijacked };

struct Scenario {
  VictimDeployment deployment;
  std::vector<AsNumber> attackers;
  // Traffic sources; nullopt means every AS in the topology. The attacker is
  // always removed from its own source set.
  std::optional<std::vector<AsNumber>> sources;
  bool rov = false;
  unsigned trials = 1;
  TiebreakPolicy tiebreak = TiebreakPolicy::lowest_next_hop();
  NoRoutePolicy no_route = NoRoutePolicy::Resilient;

  void validate(const Topology& topology) const;
};

// alpha[a][b] in {0, 1}; returns the mean over the full matrix.
double beta_from_alpha(const std::vector<std::vector<int>>& alpha);

struct ResilienceResult {
  double beta = 0.0;                // mean over attackers of per-attacker beta
  std::vector<double> per_attacker;  // aligned with Scenario::attackers
};

// Attack-resilience of the deployment. Trial t of attacker i uses the tiebreak
// stream derived from (seed, i, t), so results do not depend on `jobs`.
ResilienceResult resilience(const Topology& topology, const Scenario& scenario, unsigned jobs = 1);

// Mean alpha over the sources of a single (attacker, trial) simulation.
double attacker_beta(const Topology& topology, const Scenario& scenario, std::size_t attacker_index);

struct CdfPoint {
  double value;
  double fraction;
};
std::vector<CdfPoint> resilience_cdf(std::span<const double> values);

double median(std::vector<double> values);
double mean(std::span<const double> values);

// 100 * (after - before) / before; nullopt when before == 0.
std::optional<double> gain_percent(double before, double after);

struct DeploymentReport {
  VictimDeployment deployment;
  bool rov = false;
  std::vector<AsNumber> attackers;
  std::vector<double> per_attacker;
  double beta_mean = 0.0;
  double beta_median = 0.0;
};

struct ResilienceReport {
  std::vector<DeploymentReport> deployments;
  // Median-beta improvement of each deployment over deployments.front().
  std::vector<std::optional<double>> median_gain_percent;
};

struct CampaignSettings {
  std::vector<AsNumber> attackers;
  std::optional<std::vector<AsNumber>> sources;
  bool rov = false;
  unsigned trials = 1;
  TiebreakPolicy tiebreak = TiebreakPolicy::lowest_next_hop();
  NoRoutePolicy no_route = NoRoutePolicy::Resilient;
};

ResilienceReport run_campaign(const Topology& topology, std::span<const VictimDeployment> deployments,
                              const CampaignSettings& settings, unsigned jobs = 1);

struct SerialHijackerRow {
  AsNumber attacker;
  double beta_base = 0.0;
  double beta_sbas = 0.0;
  std::optional<double> gain_percent;
};

std::vector<SerialHijackerRow> serial_hijacker_study(const Topology& topology, std::span<const AsNumber> attackers,
                                                     const VictimDeployment& baseline, const VictimDeployment& sbas,
                                                     const CampaignSettings& settings, unsigned jobs = 1);

// `count` distinct ASes drawn uniformly without replacement from the topology
// minus `exclude`, returned sorted. Fewer are returned if the pool is smaller.
std::vector<AsNumber> sample_ases(const Topology& topology, std::size_t count, std::uint64_t seed,
                                  std::span<const AsNumber> exclude = {});

}  // namespace sbas
