#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sbas/control.hpp"
#include "sbas/lpm_table.hpp"

namespace sbas {

struct RouterPeer {
  IpAddress address;
  friend bool operator==(const RouterPeer&, const RouterPeer&) = default;
};
struct RemotePop {
  PopId pop;
  friend bool operator==(const RemotePop&, const RemotePop&) = default;
};
struct CustomerVpn {
  CustomerId customer;
  friend bool operator==(const CustomerVpn&, const CustomerVpn&) = default;
};
struct InternetNeighbor {
  AsNumber neighbor;
  friend bool operator==(const InternetNeighbor&, const InternetNeighbor&) = default;
};

using NextHop = std::variant<RouterPeer, RemotePop, CustomerVpn, InternetNeighbor>;

const char* nexthop_kind(const NextHop& nh);
std::string nexthop_id(const NextHop& nh);

enum class Tier : std::uint8_t { Control, Secure, Optimized };
const char* to_string(Tier t);

// Control, secure and optimized tables. Lookup is tier-before-length: a covering
// entry in a higher tier wins over any more specific entry in a lower one.
class PriorityTables {
 public:
  struct Match {
    Tier tier;
    Prefix prefix;
    NextHop next_hop;
  };

  void add(Tier tier, const Prefix& prefix, NextHop nh) { table(tier).insert(prefix, std::move(nh)); }

  std::optional<Match> lookup(const IpAddress& dst) const;

  const LpmTable<NextHop>& table(Tier t) const;
  LpmTable<NextHop>& table(Tier t);

  // CSV `tier,prefix,nexthop_kind,nexthop_id`, rows sorted by tier then prefix.
  std::string dump_csv() const;

 private:
  LpmTable<NextHop> control_;
  LpmTable<NextHop> secure_;
  LpmTable<NextHop> optimized_;
};

std::optional<PriorityTables::Match> lookup(const PriorityTables& tables, const IpAddress& dst);

struct IbgpRoute {
  Prefix prefix;
  PopId pop;
};
struct LocalCustomerRoute {
  Prefix prefix;
  CustomerId customer;
};
struct InternetRoute {
  Prefix prefix;
  AsNumber neighbor;
  std::size_t as_path_length = 1;
};
struct RouterAddress {
  IpAddress address;
  PopId pop;
};

struct RouteFeeds {
  std::vector<IbgpRoute> ibgp;
  std::vector<LocalCustomerRoute> customers;
  std::vector<InternetRoute> internet;
  std::vector<RouterAddress> routers;
};

struct TableBuild {
  PriorityTables tables;
  std::vector<std::string> warnings;
};

// Loads each feed into its tier. Feed entries whose address category does not
// match the tier are dropped with a warning; in particular a secure prefix heard
// from an Internet neighbor never reaches the optimized table. Among Internet
// routes for the same prefix the shortest AS path wins, then the lowest neighbor.
TableBuild build_tables(const RouteFeeds& feeds, const AddressPlan& plan);

struct Locator {
  IpAddress internal_address;
  std::string backbone;  // backbone-level address of the PoP's router
};

// Internal address to backbone locator, exactly one entry per PoP.
class InternalMap {
 public:
  // Throws ConfigError if the PoP or its internal address is already mapped.
  void add(const PopId& pop, Locator loc);
  const Locator* find(const PopId& pop) const;
  std::optional<PopId> pop_for(const IpAddress& internal) const;
  std::size_t size() const { return by_pop_.size(); }

 private:
  std::map<PopId, Locator> by_pop_;
};

using SimTime = std::chrono::seconds;

struct OriginObservation {
  SimTime time;
  AsNumber origin;
};

struct EgressCandidate {
  PopId pop;
  std::size_t as_path_length = 1;
  std::vector<OriginObservation> origin_history;  // chronological
};

struct EgressChoice {
  PopId pop;
  bool guard_fallback = false;  // every candidate was recently unstable
};

bool origin_changed_within(const EgressCandidate& c, SimTime now, SimTime window);

// Shortest AS path wins, ties to the lowest PopId. With the hijack guard,
// candidates whose observed origin changed within `window` before `now` are
// skipped unless that would leave none. Throws InvalidArgument on empty input.
EgressChoice select_egress(std::span<const EgressCandidate> candidates, bool hijack_guard, SimTime window,
                           SimTime now);

struct EgressOption {
  EgressCandidate candidate;
  AsNumber neighbor;  // Internet neighbor used at that PoP
};

struct PopState {
  PopId self;
  PriorityTables tables;
  InternalMap internal;
  LpmTable<std::vector<EgressOption>> egress;
  bool hijack_guard = false;
  SimTime guard_window{60};
  SimTime now{0};
};

struct DeliverToCustomer {
  CustomerId customer;
};
struct Encapsulate {
  PopId pop;
  Locator locator;
  IpAddress inner_destination;
};
struct ToRouter {
  IpAddress router;
};
struct ToInternet {
  PopId egress_pop;
  AsNumber neighbor;
  std::optional<Locator> tunnel;  // set when the egress PoP is remote
  bool guard_fallback = false;
};
struct Drop {
  std::string reason;
};

using ForwardDecision = std::variant<DeliverToCustomer, Encapsulate, ToRouter, ToInternet, Drop>;

std::string describe(const ForwardDecision& d);

// Data-plane decision at one PoP for a packet to `dst`. Secure and router
// destinations resolve through the priority tables; global ones through the
// egress selection, falling back to the optimized table.
ForwardDecision forward(const PopState& state, AddressCategory source, const IpAddress& dst);

// Readers get either the previous or the new table set, never a mix.
class TableEpochs {
 public:
  void publish(std::shared_ptr<const PriorityTables> tables);
  std::shared_ptr<const PriorityTables> current() const;
  std::uint64_t epoch() const;

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const PriorityTables> tables_ = std::make_shared<const PriorityTables>();
  std::uint64_t epoch_ = 0;
};

}  // namespace sbas
