#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "sbas/attack.hpp"

namespace sbas {

struct PlacementContext {
  const Topology* topology = nullptr;
  AsNumber legit_origin;
  std::vector<AsNumber> attackers;
  std::optional<std::vector<AsNumber>> sources;
  bool rov = false;
  unsigned trials = 1;
  TiebreakPolicy tiebreak = TiebreakPolicy::lowest_next_hop();
  NoRoutePolicy no_route = NoRoutePolicy::Resilient;
};

struct PlacementProblem {
  std::vector<AsNumber> candidates;
  std::size_t k = 1;
  PlacementContext context;

  // Throws InvalidArgument unless 1 <= k <= |candidates|, candidates are
  // distinct topology members, and no attacker is a candidate.
  void validate() const;
};

struct PlacementScore {
  std::vector<AsNumber> nodes;  // sorted
  double beta_mean = 0.0;
  double beta_median = 0.0;
};

// Scores node sets against the context's attacker sample. Per-attacker betas are
// cached by (node set, attacker), so overlapping searches reuse simulations.
class PlacementEvaluator {
 public:
  explicit PlacementEvaluator(const PlacementProblem& problem);

  PlacementScore evaluate(std::span<const AsNumber> nodes);
  std::size_t simulations() const;

 private:
  double attacker_beta(const std::vector<AsNumber>& nodes, std::size_t attacker_index);

  const PlacementProblem& problem_;
  mutable std::mutex mu_;
  std::map<std::pair<std::vector<AsNumber>, std::size_t>, double> cache_;
  std::size_t simulations_ = 0;
};

PlacementScore evaluate_placement(const PlacementProblem& problem, std::span<const AsNumber> nodes);

struct ExhaustiveResult {
  PlacementScore best;
  std::vector<PlacementScore> evaluated;  // every k-subset in lexicographic order
};

// Best k-subset by mean beta; ties go to the lexicographically smallest set.
// Throws InvalidArgument when C(|candidates|, k) exceeds `budget`.
ExhaustiveResult exhaustive_best(const PlacementProblem& problem, std::uint64_t budget = 1'000'000,
                                 unsigned jobs = 1);

struct GreedyStep {
  AsNumber added;
  PlacementScore chosen;
  std::vector<PlacementScore> considered;  // one per remaining candidate, ascending ASN
};

struct GreedyResult {
  PlacementScore best;
  std::vector<GreedyStep> steps;
};

// Adds, k times, the candidate that maximizes mean beta given the nodes chosen
// so far; ties go to the lowest ASN.
GreedyResult greedy_best(const PlacementProblem& problem, unsigned jobs = 1);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace sbas
