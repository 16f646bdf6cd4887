#include "sbas/latency.hpp"

#include <algorithm>

#include "sbas/error.hpp"

namespace sbas {

double end_to_end(const LatencyBreakdown& b) {
  for (double v : {b.source_to_ingress_ms, b.egress_to_destination_ms, b.pop_delay_ms, b.ingress_to_egress_ms}) {
    if (!(v >= 0.0)) throw InvalidArgument("latency components must be nonnegative");
  }
  return b.source_to_ingress_ms + b.egress_to_destination_ms + 2.0 * b.pop_delay_ms + b.ingress_to_egress_ms;
}

double pop_pair_latency(std::span<const double> path_latencies_ms) {
  if (path_latencies_ms.empty()) throw InvalidArgument("no backbone paths between the PoP pair");
  for (double v : path_latencies_ms) {
    if (!(v >= 0.0)) throw InvalidArgument("path latencies must be nonnegative");
  }
  return *std::min_element(path_latencies_ms.begin(), path_latencies_ms.end());
}

}  // namespace sbas
