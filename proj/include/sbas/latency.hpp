#pragma once

#include <span>

namespace sbas {

// Mean per-PoP processing overhead in milliseconds.
inline constexpr double kDefaultPopDelayMs = 0.83;

struct LatencyBreakdown {
  double source_to_ingress_ms = 0.0;
  double egress_to_destination_ms = 0.0;
  double pop_delay_ms = kDefaultPopDelayMs;
  double ingress_to_egress_ms = 0.0;
};

// Source to ingress PoP, backbone, egress PoP to destination, plus the
// processing delay at both PoPs. Throws InvalidArgument on a negative component.
double end_to_end(const LatencyBreakdown& b);

// Best of the available backbone paths between two PoPs.
double pop_pair_latency(std::span<const double> path_latencies_ms);

}  // namespace sbas
