#include "sbas/placement.hpp"

#include <algorithm>
#include <set>

#include "sbas/error.hpp"
#include "sbas/parallel.hpp"

namespace sbas {

void PlacementProblem::validate() const {
  if (!context.topology) throw InvalidArgument("placement problem has no topology");
  if (k < 1 || k > candidates.size()) {
    throw InvalidArgument("k must satisfy 1 <= k <= " + std::to_string(candidates.size()));
  }
  std::set<AsNumber> seen;
  for (AsNumber c : candidates) {
    context.topology->require(c);
    if (!seen.insert(c).second) throw InvalidArgument("duplicate candidate AS " + c.to_string());
  }
  if (context.attackers.empty()) throw InvalidArgument("placement needs at least one attacker");
  for (AsNumber a : context.attackers) {
    if (seen.contains(a)) throw InvalidArgument("attacker AS " + a.to_string() + " is also a candidate");
  }
}

PlacementEvaluator::PlacementEvaluator(const PlacementProblem& problem) : problem_(problem) { problem_.validate(); }

std::size_t PlacementEvaluator::simulations() const {
  std::lock_guard lock(mu_);
  return simulations_;
}

double PlacementEvaluator::attacker_beta(const std::vector<AsNumber>& nodes, std::size_t attacker_index) {
  auto key = std::make_pair(nodes, attacker_index);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto& ctx = problem_.context;
  Scenario sc;
  sc.deployment = VictimDeployment{"", nodes, ctx.legit_origin};
  sc.attackers = ctx.attackers;
  sc.sources = ctx.sources;
  sc.rov = ctx.rov;
  sc.trials = ctx.trials;
  sc.tiebreak = ctx.tiebreak;
  sc.no_route = ctx.no_route;
  double b = sbas::attacker_beta(*ctx.topology, sc, attacker_index);
  std::lock_guard lock(mu_);
  cache_[key] = b;
  ++simulations_;
  return b;
}

PlacementScore PlacementEvaluator::evaluate(std::span<const AsNumber> nodes) {
  if (nodes.empty()) throw InvalidArgument("placement node set is empty");
  std::vector<AsNumber> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("placement node set has duplicates");
  }
  for (AsNumber n : sorted) {
    if (std::find(problem_.candidates.begin(), problem_.candidates.end(), n) == problem_.candidates.end()) {
      throw InvalidArgument("AS " + n.to_string() + " is not a placement candidate");
    }
  }
  std::vector<double> per(problem_.context.attackers.size());
  for (std::size_t i = 0; i < per.size(); ++i) per[i] = attacker_beta(sorted, i);
  return PlacementScore{sorted, mean(per), median(per)};
}

PlacementScore evaluate_placement(const PlacementProblem& problem, std::span<const AsNumber> nodes) {
  PlacementEvaluator ev(problem);
  return ev.evaluate(nodes);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

// Strictly better: earlier entries win ties, which keeps lexicographic order.
bool better(const PlacementScore& a, const PlacementScore& b) { return a.beta_mean > b.beta_mean; }

}  // namespace

ExhaustiveResult exhaustive_best(const PlacementProblem& problem, std::uint64_t budget, unsigned jobs) {
  problem.validate();
  const std::uint64_t count = binomial(problem.candidates.size(), problem.k);
  if (count > budget) {
    throw InvalidArgument("exhaustive placement needs " + std::to_string(count) + " subsets, budget is " +
                          std::to_string(budget));
  }
  std::vector<AsNumber> cands = problem.candidates;
  std::sort(cands.begin(), cands.end());

  std::vector<std::vector<AsNumber>> subsets;
  subsets.reserve(count);
  std::vector<std::size_t> idx(problem.k);
  for (std::size_t i = 0; i < problem.k; ++i) idx[i] = i;
  while (true) {
    std::vector<AsNumber> s;
    for (std::size_t i : idx) s.push_back(cands[i]);
    subsets.push_back(std::move(s));
    std::size_t pos = problem.k;
    while (pos > 0 && idx[pos - 1] == cands.size() - problem.k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < problem.k; ++i) idx[i] = idx[i - 1] + 1;
  }

  PlacementEvaluator ev(problem);
  ExhaustiveResult out;
  out.evaluated.resize(subsets.size());
  parallel_for(subsets.size(), jobs, [&](std::size_t i) { out.evaluated[i] = ev.evaluate(subsets[i]); });
  out.best = out.evaluated.front();
  for (const auto& s : out.evaluated) {
    if (better(s, out.best)) out.best = s;
  }
  return out;
}

GreedyResult greedy_best(const PlacementProblem& problem, unsigned jobs) {
  problem.validate();
  PlacementEvaluator ev(problem);
  std::vector<AsNumber> remaining = problem.candidates;
  std::sort(remaining.begin(), remaining.end());
  std::vector<AsNumber> chosen;
  GreedyResult out;
  for (std::size_t step = 0; step < problem.k; ++step) {
    GreedyStep gs;
    gs.considered.resize(remaining.size());
    parallel_for(remaining.size(), jobs, [&](std::size_t i) {
      std::vector<AsNumber> trial = chosen;
      trial.push_back(remaining[i]);
      gs.considered[i] = ev.evaluate(trial);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      if (better(gs.considered[i], gs.considered[best])) best = i;
    }
    gs.added = remaining[best];
    gs.chosen = gs.considered[best];
    chosen.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    out.steps.push_back(std::move(gs));
  }
  out.best = out.steps.back().chosen;
  return out;
}

}  // namespace sbas
