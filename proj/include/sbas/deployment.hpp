#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sbas/config.hpp"
#include "sbas/control.hpp"
#include "sbas/pop_engine.hpp"

namespace sbas {

// One customer announcement as it entered SBAS.
struct IngressRecord {
  CustomerId customer;
  Prefix prefix;
  std::optional<PopId> ingress;  // nullopt when every ingress PoP is down
  std::optional<RejectReason> rejected;
};

// What a PoP did with a route it holds: the ingress PoP for its own customer's
// prefix (local) or a remote PoP for an iBGP update.
struct EgressRecord {
  IbgpUpdate update;
  PopId at_pop;
  bool local = false;
  bool authorized = true;
  bool revalidated = true;
  EgressTargets targets;
  std::optional<ExternalAnnouncement> external;
};

struct ControlPlaneRun {
  std::vector<IngressRecord> ingress;
  std::vector<IbgpUpdate> updates;  // everything sent over the iBGP mesh
  std::vector<EgressRecord> egress;
  std::map<CustomerId, IpAddress> pool_assignments;
  std::map<PopId, PopState> pops;
  std::vector<std::string> warnings;
  std::vector<std::string> violations;  // failed invariant checks; empty when sound
};

// Runs the whole control plane for a deployment: ingress validation at the
// active ingress PoP, full-mesh redistribution, authorization and re-validation
// at receiving PoPs, egress policy, table construction, then invariant checks
// on the result (SBAS-only containment, mesh fan-out, forwarding loops).
ControlPlaneRun run_control_plane(const DeploymentConfig& config, const std::set<PopId>& down = {});

}  // namespace sbas
