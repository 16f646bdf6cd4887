#include "sbas/attack.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sbas/error.hpp"
#include "sbas/parallel.hpp"
#include "sbas/rng.hpp"

namespace sbas {

void Scenario::validate(const Topology& topology) const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (deployment.nodes.empty()) throw InvalidArgument("deployment '" + deployment.id + "' has no nodes");
  if (attackers.empty()) throw InvalidArgument("resilience needs at least one attacker");
  for (AsNumber v : deployment.nodes) topology.require(v);
  topology.require(deployment.legit_origin);
  for (AsNumber a : attackers) {
    topology.require(a);
    if (std::find(deployment.nodes.begin(), deployment.nodes.end(), a) != deployment.nodes.end()) {
      throw InvalidArgument("attacker AS " + a.to_string() + " is an announcement node of '" + deployment.id + "'");
    }
  }
  if (sources) {
    if (sources->empty()) throw InvalidArgument("source set is empty");
    for (AsNumber b : *sources) topology.require(b);
  } else if (topology.size() < 2) {
    throw InvalidArgument("source set is empty");
  }
}

double beta_from_alpha(const std::vector<std::vector<int>>& alpha) {
  if (alpha.empty() || alpha.front().empty()) throw InvalidArgument("alpha matrix is empty");
  std::size_t cells = 0;
  long long ones = 0;
  for (const auto& row : alpha) {
    if (row.size() != alpha.front().size()) throw InvalidArgument("alpha matrix is ragged");
    for (int a : row) {
      if (a != 0 && a != 1) throw InvalidArgument("alpha entries must be 0 or 1");
      ones += a;
    }
    cells += row.size();
  }
  return static_cast<double>(ones) / static_cast<double>(cells);
}

double attacker_beta(const Topology& topology, const Scenario& scenario, std::size_t attacker_index) {
  const AsNumber attacker = scenario.attackers.at(attacker_index);
  const Topology::Index attacker_idx = topology.require(attacker);

  std::vector<Topology::Index> sources;
  if (scenario.sources) {
    for (AsNumber b : *scenario.sources) {
      Topology::Index i = topology.require(b);
      if (i != attacker_idx) sources.push_back(i);
    }
  } else {
    sources.reserve(topology.size());
    for (Topology::Index i = 0; i < topology.size(); ++i) {
      if (i != attacker_idx) sources.push_back(i);
    }
  }
  if (sources.empty()) throw InvalidArgument("source set is empty once attacker " + attacker.to_string() + " is removed");

  std::size_t resilient = 0;
  for (unsigned t = 0; t < scenario.trials; ++t) {
    TiebreakPolicy tb = scenario.tiebreak.derive({attacker_index, t});
    HijackOutcome out = simulate_hijack(topology, scenario.deployment.nodes, attacker, scenario.deployment.legit_origin,
                                        scenario.rov, tb);
    for (Topology::Index b : sources) {
      Classification c = out.classification[b];
      if (c == Classification::RoutesToVictim ||
          (c == Classification::NoRoute && scenario.no_route == NoRoutePolicy::Resilient)) {
        ++resilient;
      }
    }
  }
  return static_cast<double>(resilient) / static_cast<double>(sources.size() * scenario.trials);
}

ResilienceResult resilience(const Topology& topology, const Scenario& scenario, unsigned jobs) {
  scenario.validate(topology);
  ResilienceResult r;
  r.per_attacker.resize(scenario.attackers.size());
  parallel_for(scenario.attackers.size(), jobs,
               [&](std::size_t i) { r.per_attacker[i] = attacker_beta(topology, scenario, i); });
  r.beta = mean(r.per_attacker);
  return r;
}

std::vector<CdfPoint> resilience_cdf(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("cannot build a CDF from no values");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("resilience value out of [0,1]");
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> out;
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of empty set");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("mean of empty set");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::optional<double> gain_percent(double before, double after) {
  if (before == 0.0) return std::nullopt;
  return 100.0 * (after - before) / before;
}

namespace {

Scenario make_scenario(const VictimDeployment& d, const CampaignSettings& s) {
  Scenario sc;
  sc.deployment = d;
  sc.attackers = s.attackers;
  sc.sources = s.sources;
  sc.rov = s.rov;
  sc.trials = s.trials;
  sc.tiebreak = s.tiebreak;
  sc.no_route = s.no_route;
  return sc;
}

}  // namespace

ResilienceReport run_campaign(const Topology& topology, std::span<const VictimDeployment> deployments,
                              const CampaignSettings& settings, unsigned jobs) {
  if (deployments.empty()) throw InvalidArgument("campaign has no deployments");
  std::vector<Scenario> scenarios;
  for (const auto& d : deployments) {
    scenarios.push_back(make_scenario(d, settings));
    scenarios.back().validate(topology);
  }

  // Flatten (deployment, attacker) so the pool stays busy across deployments.
  const std::size_t per = settings.attackers.size();
  std::vector<double> flat(deployments.size() * per);
  parallel_for(flat.size(), jobs,
               [&](std::size_t k) { flat[k] = attacker_beta(topology, scenarios[k / per], k % per); });

  ResilienceReport report;
  for (std::size_t d = 0; d < deployments.size(); ++d) {
    DeploymentReport dr;
    dr.deployment = deployments[d];
    dr.rov = settings.rov;
    dr.attackers = settings.attackers;
    dr.per_attacker.assign(flat.begin() + static_cast<std::ptrdiff_t>(d * per),
                           flat.begin() + static_cast<std::ptrdiff_t>((d + 1) * per));
    dr.beta_mean = mean(dr.per_attacker);
    dr.beta_median = median(dr.per_attacker);
    report.deployments.push_back(std::move(dr));
  }
  for (const auto& dr : report.deployments) {
    report.median_gain_percent.push_back(gain_percent(report.deployments.front().beta_median, dr.beta_median));
  }
  return report;
}

std::vector<SerialHijackerRow> serial_hijacker_study(const Topology& topology, std::span<const AsNumber> attackers,
                                                     const VictimDeployment& baseline, const VictimDeployment& sbas,
                                                     const CampaignSettings& settings, unsigned jobs) {
  if (attackers.empty()) throw InvalidArgument("serial hijacker study needs at least one attacker");
  if (baseline.legit_origin != sbas.legit_origin) {
    throw InvalidArgument("baseline and SBAS deployments must share the legitimate origin");
  }
  CampaignSettings s = settings;
  s.attackers.assign(attackers.begin(), attackers.end());
  const VictimDeployment pair[] = {baseline, sbas};
  ResilienceReport rep = run_campaign(topology, pair, s, jobs);
  std::vector<SerialHijackerRow> rows;
  for (std::size_t i = 0; i < attackers.size(); ++i) {
    SerialHijackerRow row;
    row.attacker = attackers[i];
    row.beta_base = rep.deployments[0].per_attacker[i];
    row.beta_sbas = rep.deployments[1].per_attacker[i];
    row.gain_percent = gain_percent(row.beta_base, row.beta_sbas);
    rows.push_back(row);
  }
  return rows;
}

std::vector<AsNumber> sample_ases(const Topology& topology, std::size_t count, std::uint64_t seed,
                                  std::span<const AsNumber> exclude) {
  std::set<AsNumber> skip(exclude.begin(), exclude.end());
  std::vector<AsNumber> pool;
  for (AsNumber a : topology.asns()) {
    if (!skip.contains(a)) pool.push_back(a);
  }
  count = std::min(count, pool.size());
  Rng rng(derive_seed({seed, 0x5a3b1e}));
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace sbas
