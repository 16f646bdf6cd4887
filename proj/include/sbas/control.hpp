#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sbas/address.hpp"

namespace sbas {

struct PopId {
  std::string value;
  friend auto operator<=>(const PopId&, const PopId&) = default;
};

using CustomerId = std::string;

enum class SbasCommunity : std::uint8_t {
  SbasOnly,  // redistribute to SBAS customers only, never to Internet neighbors
};

const char* to_string(SbasCommunity c);
SbasCommunity parse_community(std::string_view text);

struct RoaRecord {
  Prefix prefix;
  AsNumber origin;
  unsigned max_length = 0;

  // Throws InvalidArgument unless prefix.length <= max_length <= family maximum.
  RoaRecord(Prefix p, AsNumber o, unsigned max_len);
};

struct CustomerAnnouncement {
  Prefix prefix;
  std::vector<AsNumber> as_path;
  std::set<SbasCommunity> communities;
  PopId ingress_pop;
  AsNumber customer;
};

enum class RejectReason : std::uint8_t { NoRoa, OriginMismatch, MaxLengthExceeded, ForeignAsnInPath, EmptyPath };
const char* to_string(RejectReason r);

struct IngressVerdict;
IngressVerdict validate_ingress(const CustomerAnnouncement& ann, std::span<const RoaRecord> roas);

// An announcement that passed ingress validation; only validate_ingress makes one.
class ValidatedAnnouncement {
 public:
  const CustomerAnnouncement& announcement() const { return ann_; }
  const RoaRecord& roa() const { return roa_; }

 private:
  friend IngressVerdict validate_ingress(const CustomerAnnouncement&, std::span<const RoaRecord>);
  ValidatedAnnouncement(CustomerAnnouncement a, RoaRecord r) : ann_(std::move(a)), roa_(std::move(r)) {}
  CustomerAnnouncement ann_;
  RoaRecord roa_;
};

struct IngressVerdict {
  std::optional<ValidatedAnnouncement> validated;
  std::optional<RejectReason> rejected;

  bool ok() const { return validated.has_value(); }
};

// validate_ingress accepts iff every AS-path element equals the origin
// (prepending allowed) and a ROA covering the prefix names that origin with a
// sufficient max length.

struct IbgpUpdate {
  Prefix prefix;
  AsNumber origin;  // origin customer ASN (SBAS ASN for pool addresses)
  PopId originating_pop;
  PopId target_pop;
  std::set<SbasCommunity> communities;
  std::vector<AsNumber> as_path;  // as received from the customer; empty for pool addresses
  bool sbas_owned = false;
  std::optional<CustomerId> customer;
};

// Per-prefix set of PoPs allowed to redistribute it. A prefix without a record
// may be redistributed by every PoP.
class PopAuthorization {
 public:
  void authorize(const Prefix& prefix, std::set<PopId> pops) { records_[prefix] = std::move(pops); }
  bool allows(const Prefix& prefix, const PopId& pop) const;
  const std::map<Prefix, std::set<PopId>>& records() const { return records_; }

 private:
  std::map<Prefix, std::set<PopId>> records_;
};

bool check_pop_authorization(const IbgpUpdate& update, const PopAuthorization& auth);

struct CustomerAttachment {
  CustomerId id;
  std::optional<AsNumber> asn;
};

struct PopConfig {
  PopId id;
  AsNumber sbas_asn;
  Prefix internal_prefix;
  IpAddress internal_address;  // router address used for iBGP and as tunnel locator
  std::vector<AsNumber> internet_peers;
  std::vector<CustomerAttachment> customers;
};

// One update per PoP other than the ingress, over the full iBGP mesh.
// Throws InvalidArgument when the ingress PoP is not part of `pops`.
std::vector<IbgpUpdate> redistribute(const ValidatedAnnouncement& ann, std::span<const PopConfig> pops);

struct EgressTargets {
  std::vector<CustomerId> customers;
  std::vector<AsNumber> internet;
};

// Where the receiving PoP re-announces an update. The customer that originated
// the prefix is never sent its own route back.
EgressTargets egress_targets(const IbgpUpdate& update, const PopConfig& pop, const PopAuthorization& auth);

struct ExternalAnnouncement {
  Prefix prefix;
  std::vector<AsNumber> as_path;
};

// Customer prefixes keep the received path behind the SBAS ASN so the customer
// origin still validates at external ROV filters; SBAS-owned prefixes carry
// only the SBAS ASN.
ExternalAnnouncement make_egress_announcement(const IbgpUpdate& update, AsNumber sbas_asn);

enum class AddressCategory : std::uint8_t { Secure, Internal, Global };
const char* to_string(AddressCategory c);

// Partition of the address space given a deployment.
class AddressPlan {
 public:
  AddressPlan() = default;
  // Throws ConfigError when a secure range overlaps an internal range.
  AddressPlan(std::vector<Prefix> secure, std::vector<Prefix> internal);

  AddressCategory classify(const IpAddress& addr) const;
  // Category of a whole prefix: Secure if a secure range covers it, Internal if
  // an internal range covers it, Global otherwise.
  AddressCategory classify(const Prefix& prefix) const;

  const std::vector<Prefix>& secure() const { return secure_; }
  const std::vector<Prefix>& internal() const { return internal_; }

 private:
  std::vector<Prefix> secure_;
  std::vector<Prefix> internal_;
};

AddressCategory classify_address(const IpAddress& addr, const AddressPlan& plan);

// Host addresses handed out from an SBAS-owned secure prefix. Assignment is
// lowest-free, skips the all-zeros and all-ones hosts, and is idempotent per
// customer. Not thread-safe; callers serialize assignment per pool.
class AddressPool {
 public:
  explicit AddressPool(Prefix pool);

  struct Assignment {
    IpAddress address;
    bool fresh = false;  // false when the customer already held this address
  };

  // Throws Error("address pool ... exhausted") when no host is left.
  Assignment assign(const CustomerId& customer);

  const Prefix& prefix() const { return pool_; }
  std::size_t capacity() const;
  const std::map<CustomerId, IpAddress>& assignments() const { return by_customer_; }

 private:
  Prefix pool_;
  unsigned host_bits_;
  std::uint64_t next_offset_ = 1;
  std::map<CustomerId, IpAddress> by_customer_;
};

IpAddress assign_secure_address(AddressPool& pool, const CustomerId& customer);

// iBGP notifications telling every other PoP about a freshly assigned pool
// address, so they route it to `ingress`. Empty for repeat assignments.
std::vector<IbgpUpdate> announce_assignment(const AddressPool::Assignment& assignment, const CustomerId& customer,
                                            const PopId& ingress, std::span<const PopConfig> pops,
                                            AsNumber sbas_asn);

// Primary ingress unless it is down, then the first live backup.
struct IngressChoice {
  PopId primary;
  std::vector<PopId> backups;

  std::optional<PopId> active(const std::set<PopId>& down) const;
};

}  // namespace sbas
