#include "sbas/control.hpp"

#include <algorithm>

#include "sbas/error.hpp"

namespace sbas {

const char* to_string(SbasCommunity c) {
  switch (c) {
    case SbasCommunity::SbasOnly: return "sbas-only";
  }
  return "?";
}

SbasCommunity parse_community(std::string_view text) {
  if (text == "sbas-only") return SbasCommunity::SbasOnly;
  throw ParseError("unknown SBAS community '" + std::string(text) + "'");
}

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NoRoa: return "no-roa";
    case RejectReason::OriginMismatch: return "origin-mismatch";
    case RejectReason::MaxLengthExceeded: return "max-length-exceeded";
    case RejectReason::ForeignAsnInPath: return "foreign-asn-in-path";
    case RejectReason::EmptyPath: return "empty-path";
  }
  return "?";
}

const char* to_string(AddressCategory c) {
  switch (c) {
    case AddressCategory::Secure: return "secure";
    case AddressCategory::Internal: return "internal";
    case AddressCategory::Global: return "global";
  }
  return "?";
}

RoaRecord::RoaRecord(Prefix p, AsNumber o, unsigned max_len) : prefix(p), origin(o), max_length(max_len) {
  if (!o.valid()) throw InvalidArgument("ROA origin must be a valid AS number");
  if (max_len < p.length() || max_len > sbas::max_length(p.version())) {
    throw InvalidArgument("ROA max length " + std::to_string(max_len) + " invalid for " + p.to_string());
  }
}

IngressVerdict validate_ingress(const CustomerAnnouncement& ann, std::span<const RoaRecord> roas) {
  IngressVerdict v;
  if (ann.as_path.empty()) {
    v.rejected = RejectReason::EmptyPath;
    return v;
  }
  const AsNumber origin = ann.as_path.back();
  if (std::any_of(ann.as_path.begin(), ann.as_path.end(), [&](AsNumber a) { return a != origin; })) {
    v.rejected = RejectReason::ForeignAsnInPath;
    return v;
  }
  bool covered = false;
  bool origin_matched = false;
  for (const RoaRecord& roa : roas) {
    if (!roa.prefix.covers(ann.prefix)) continue;
    covered = true;
    if (roa.origin != origin) continue;
    origin_matched = true;
    if (ann.prefix.length() <= roa.max_length) {
      v.validated = ValidatedAnnouncement(ann, roa);
      return v;
    }
  }
  v.rejected = !covered ? RejectReason::NoRoa
               : origin_matched ? RejectReason::MaxLengthExceeded
                                : RejectReason::OriginMismatch;
  return v;
}

bool PopAuthorization::allows(const Prefix& prefix, const PopId& pop) const {
  auto it = records_.find(prefix);
  return it == records_.end() || it->second.contains(pop);
}

bool check_pop_authorization(const IbgpUpdate& update, const PopAuthorization& auth) {
  return auth.allows(update.prefix, update.originating_pop);
}

std::vector<IbgpUpdate> redistribute(const ValidatedAnnouncement& validated, std::span<const PopConfig> pops) {
  const CustomerAnnouncement& ann = validated.announcement();
  if (std::none_of(pops.begin(), pops.end(), [&](const PopConfig& p) { return p.id == ann.ingress_pop; })) {
    throw InvalidArgument("ingress PoP '" + ann.ingress_pop.value + "' is not configured");
  }
  std::vector<IbgpUpdate> out;
  for (const PopConfig& pop : pops) {
    if (pop.id == ann.ingress_pop) continue;
    IbgpUpdate u;
    u.prefix = ann.prefix;
    u.origin = ann.as_path.back();
    u.originating_pop = ann.ingress_pop;
    u.target_pop = pop.id;
    u.communities = ann.communities;
    u.as_path = ann.as_path;
    out.push_back(std::move(u));
  }
  return out;
}

EgressTargets egress_targets(const IbgpUpdate& update, const PopConfig& pop, const PopAuthorization& auth) {
  EgressTargets t;
  if (!check_pop_authorization(update, auth)) return t;
  for (const auto& c : pop.customers) {
    if (update.customer && *update.customer == c.id) continue;
    if (!update.sbas_owned && c.asn && *c.asn == update.origin) continue;
    t.customers.push_back(c.id);
  }
  if (!update.communities.contains(SbasCommunity::SbasOnly)) t.internet = pop.internet_peers;
  return t;
}

ExternalAnnouncement make_egress_announcement(const IbgpUpdate& update, AsNumber sbas_asn) {
  ExternalAnnouncement e{update.prefix, {sbas_asn}};
  if (!update.sbas_owned) e.as_path.insert(e.as_path.end(), update.as_path.begin(), update.as_path.end());
  return e;
}

AddressPlan::AddressPlan(std::vector<Prefix> secure, std::vector<Prefix> internal)
    : secure_(std::move(secure)), internal_(std::move(internal)) {
  for (const Prefix& s : secure_) {
    for (const Prefix& i : internal_) {
      if (s.overlaps(i)) {
        throw ConfigError("secure range " + s.to_string() + " overlaps internal range " + i.to_string());
      }
    }
  }
}

AddressCategory AddressPlan::classify(const IpAddress& addr) const {
  for (const Prefix& p : secure_) {
    if (p.contains(addr)) return AddressCategory::Secure;
  }
  for (const Prefix& p : internal_) {
    if (p.contains(addr)) return AddressCategory::Internal;
  }
  return AddressCategory::Global;
}

AddressCategory AddressPlan::classify(const Prefix& prefix) const {
  for (const Prefix& p : secure_) {
    if (p.covers(prefix)) return AddressCategory::Secure;
  }
  for (const Prefix& p : internal_) {
    if (p.covers(prefix)) return AddressCategory::Internal;
  }
  return AddressCategory::Global;
}

AddressCategory classify_address(const IpAddress& addr, const AddressPlan& plan) { return plan.classify(addr); }

AddressPool::AddressPool(Prefix pool) : pool_(pool), host_bits_(max_length(pool.version()) - pool.length()) {}

std::size_t AddressPool::capacity() const {
  if (host_bits_ < 2) return 0;
  if (host_bits_ >= 63) return SIZE_MAX;
  return (std::size_t{1} << host_bits_) - 2;
}

AddressPool::Assignment AddressPool::assign(const CustomerId& customer) {
  if (auto it = by_customer_.find(customer); it != by_customer_.end()) return {it->second, false};
  if (by_customer_.size() >= capacity()) throw Error("address pool " + pool_.to_string() + " exhausted");

  std::uint64_t offset = next_offset_++;
  auto bytes = pool_.network().bytes();
  const unsigned last = max_length(pool_.version()) / 8 - 1;
  std::uint64_t carry = offset;
  for (int i = static_cast<int>(last); i >= 0 && carry; --i) {
    std::uint64_t sum = bytes[i] + (carry & 0xFF);
    bytes[i] = static_cast<std::uint8_t>(sum);
    carry = (carry >> 8) + (sum >> 8);
  }
  IpAddress addr(pool_.version(), bytes);
  by_customer_.emplace(customer, addr);
  return {addr, true};
}

IpAddress assign_secure_address(AddressPool& pool, const CustomerId& customer) {
  return pool.assign(customer).address;
}

std::vector<IbgpUpdate> announce_assignment(const AddressPool::Assignment& assignment, const CustomerId& customer,
                                            const PopId& ingress, std::span<const PopConfig> pops,
                                            AsNumber sbas_asn) {
  std::vector<IbgpUpdate> out;
  if (!assignment.fresh) return out;
  for (const PopConfig& pop : pops) {
    if (pop.id == ingress) continue;
    IbgpUpdate u;
    u.prefix = Prefix::host(assignment.address);
    u.origin = sbas_asn;
    u.originating_pop = ingress;
    u.target_pop = pop.id;
    u.sbas_owned = true;
    u.customer = customer;
    out.push_back(std::move(u));
  }
  return out;
}

std::optional<PopId> IngressChoice::active(const std::set<PopId>& down) const {
  if (!down.contains(primary)) return primary;
  for (const PopId& b : backups) {
    if (!down.contains(b)) return b;
  }
  return std::nullopt;
}

}  // namespace sbas
