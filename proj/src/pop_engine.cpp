#include "sbas/pop_engine.hpp"

#include <algorithm>
#include <sstream>

#include "sbas/error.hpp"

namespace sbas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* nexthop_kind(const NextHop& nh) {
  return std::visit(Overloaded{[](const RouterPeer&) { return "router"; },
                               [](const RemotePop&) { return "pop"; },
                               [](const CustomerVpn&) { return "customer"; },
                               [](const InternetNeighbor&) { return "neighbor"; }},
                    nh);
}

std::string nexthop_id(const NextHop& nh) {
  return std::visit(Overloaded{[](const RouterPeer& r) { return r.address.to_string(); },
                               [](const RemotePop& p) { return p.pop.value; },
                               [](const CustomerVpn& c) { return c.customer; },
                               [](const InternetNeighbor& n) { return n.neighbor.to_string(); }},
                    nh);
}

const char* to_string(Tier t) {
  switch (t) {
    case Tier::Control: return "control";
    case Tier::Secure: return "secure";
    case Tier::Optimized: return "optimized";
  }
  return "?";
}

const LpmTable<NextHop>& PriorityTables::table(Tier t) const {
  switch (t) {
    case Tier::Control: return control_;
    case Tier::Secure: return secure_;
    case Tier::Optimized: break;
  }
  return optimized_;
}

LpmTable<NextHop>& PriorityTables::table(Tier t) {
  return const_cast<LpmTable<NextHop>&>(std::as_const(*this).table(t));
}

std::optional<PriorityTables::Match> PriorityTables::lookup(const IpAddress& dst) const {
  for (Tier t : {Tier::Control, Tier::Secure, Tier::Optimized}) {
    if (auto hit = table(t).lookup(dst)) return Match{t, hit->prefix, *hit->value};
  }
  return std::nullopt;
}

std::string PriorityTables::dump_csv() const {
  std::ostringstream out;
  out << "tier,prefix,nexthop_kind,nexthop_id\n";
  for (Tier t : {Tier::Control, Tier::Secure, Tier::Optimized}) {
    auto rows = table(t).entries();
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [prefix, nh] : rows) {
      out << to_string(t) << ',' << prefix.to_string() << ',' << nexthop_kind(nh) << ',' << nexthop_id(nh) << '\n';
    }
  }
  return out.str();
}

std::optional<PriorityTables::Match> lookup(const PriorityTables& tables, const IpAddress& dst) {
  return tables.lookup(dst);
}

TableBuild build_tables(const RouteFeeds& feeds, const AddressPlan& plan) {
  TableBuild out;
  for (const auto& r : feeds.routers) {
    if (plan.classify(r.address) != AddressCategory::Internal) {
      out.warnings.push_back("router address " + r.address.to_string() + " of PoP " + r.pop.value +
                             " is not internal; dropped");
      continue;
    }
    out.tables.add(Tier::Control, Prefix::host(r.address), RouterPeer{r.address});
  }
  for (const auto& r : feeds.ibgp) {
    if (plan.classify(r.prefix) != AddressCategory::Secure) {
      out.warnings.push_back("iBGP route " + r.prefix.to_string() + " is not secure; dropped");
      continue;
    }
    out.tables.add(Tier::Secure, r.prefix, RemotePop{r.pop});
  }
  // Local customers are loaded after remote PoPs so a locally attached customer wins.
  for (const auto& r : feeds.customers) {
    if (plan.classify(r.prefix) != AddressCategory::Secure) {
      out.warnings.push_back("customer route " + r.prefix.to_string() + " is not secure; dropped");
      continue;
    }
    out.tables.add(Tier::Secure, r.prefix, CustomerVpn{r.customer});
  }

  std::vector<InternetRoute> internet = feeds.internet;
  std::stable_sort(internet.begin(), internet.end(), [](const InternetRoute& a, const InternetRoute& b) {
    return std::tie(a.prefix, a.as_path_length, a.neighbor) < std::tie(b.prefix, b.as_path_length, b.neighbor);
  });
  for (std::size_t i = 0; i < internet.size(); ++i) {
    const auto& r = internet[i];
    if (i > 0 && internet[i - 1].prefix == r.prefix) continue;
    AddressCategory cat = plan.classify(r.prefix);
    if (cat == AddressCategory::Secure || cat == AddressCategory::Internal) {
      out.warnings.push_back(std::string(to_string(cat)) + " prefix " + r.prefix.to_string() +
                             " heard from AS " + r.neighbor.to_string() + "; dropped");
      continue;
    }
    out.tables.add(Tier::Optimized, r.prefix, InternetNeighbor{r.neighbor});
  }
  return out;
}

void InternalMap::add(const PopId& pop, Locator loc) {
  if (by_pop_.contains(pop)) throw ConfigError("PoP '" + pop.value + "' already has an internal map entry");
  for (const auto& [id, l] : by_pop_) {
    if (l.internal_address == loc.internal_address) {
      throw ConfigError("internal address " + loc.internal_address.to_string() + " used by both '" + id.value +
                        "' and '" + pop.value + "'");
    }
  }
  by_pop_.emplace(pop, std::move(loc));
}

const Locator* InternalMap::find(const PopId& pop) const {
  auto it = by_pop_.find(pop);
  return it == by_pop_.end() ? nullptr : &it->second;
}

std::optional<PopId> InternalMap::pop_for(const IpAddress& internal) const {
  for (const auto& [id, l] : by_pop_) {
    if (l.internal_address == internal) return id;
  }
  return std::nullopt;
}

bool origin_changed_within(const EgressCandidate& c, SimTime now, SimTime window) {
  const auto& h = c.origin_history;
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i].origin != h[i - 1].origin && h[i].time <= now && now - h[i].time <= window) return true;
  }
  return false;
}

EgressChoice select_egress(std::span<const EgressCandidate> candidates, bool hijack_guard, SimTime window,
                           SimTime now) {
  if (candidates.empty()) throw InvalidArgument("no egress candidates");
  std::vector<const EgressCandidate*> pool;
  if (hijack_guard) {
    for (const auto& c : candidates) {
      if (!origin_changed_within(c, now, window)) pool.push_back(&c);
    }
  }
  EgressChoice choice;
  if (pool.empty()) {
    choice.guard_fallback = hijack_guard;
    for (const auto& c : candidates) pool.push_back(&c);
  }
  const EgressCandidate* best = *std::min_element(pool.begin(), pool.end(), [](const auto* a, const auto* b) {
    return std::tie(a->as_path_length, a->pop) < std::tie(b->as_path_length, b->pop);
  });
  choice.pop = best->pop;
  return choice;
}

std::string describe(const ForwardDecision& d) {
  return std::visit(
      Overloaded{[](const DeliverToCustomer& x) { return "deliver customer=" + x.customer; },
                 [](const Encapsulate& x) {
                   return "encapsulate pop=" + x.pop.value + " locator=" + x.locator.backbone +
                          " inner=" + x.inner_destination.to_string();
                 },
                 [](const ToRouter& x) { return "router " + x.router.to_string(); },
                 [](const ToInternet& x) {
                   std::string s = "internet pop=" + x.egress_pop.value + " neighbor=" + x.neighbor.to_string();
                   if (x.tunnel) s += " via=" + x.tunnel->backbone;
                   return s;
                 },
                 [](const Drop& x) { return "drop " + x.reason; }},
      d);
}

namespace {

ForwardDecision via_pop(const PopState& state, const PopId& pop, const IpAddress& dst) {
  const Locator* loc = state.internal.find(pop);
  if (!loc) return Drop{"no internal mapping for PoP " + pop.value};
  return Encapsulate{pop, *loc, dst};
}

}  // namespace

ForwardDecision forward(const PopState& state, AddressCategory /*source*/, const IpAddress& dst) {
  auto match = state.tables.lookup(dst);
  if (match && match->tier != Tier::Optimized) {
    return std::visit(Overloaded{[&](const RouterPeer& r) -> ForwardDecision { return ToRouter{r.address}; },
                                 [&](const RemotePop& p) -> ForwardDecision {
                                   if (p.pop == state.self) return Drop{"secure route points at self"};
                                   return via_pop(state, p.pop, dst);
                                 },
                                 [&](const CustomerVpn& c) -> ForwardDecision { return DeliverToCustomer{c.customer}; },
                                 [&](const InternetNeighbor&) -> ForwardDecision {
                                   return Drop{"secure tier holds an Internet next hop"};
                                 }},
                      match->next_hop);
  }

  if (auto hit = state.egress.lookup(dst); hit && !hit->value->empty()) {
    const auto& options = *hit->value;
    std::vector<EgressCandidate> cands;
    for (const auto& o : options) cands.push_back(o.candidate);
    EgressChoice choice = select_egress(cands, state.hijack_guard, state.guard_window, state.now);
    const auto& opt = *std::find_if(options.begin(), options.end(),
                                    [&](const EgressOption& o) { return o.candidate.pop == choice.pop; });
    ToInternet out{choice.pop, opt.neighbor, std::nullopt, choice.guard_fallback};
    if (choice.pop != state.self) {
      const Locator* loc = state.internal.find(choice.pop);
      if (!loc) return Drop{"no internal mapping for PoP " + choice.pop.value};
      out.tunnel = *loc;
    }
    return out;
  }

  if (match) {
    return std::visit(Overloaded{[&](const InternetNeighbor& n) -> ForwardDecision {
                                   return ToInternet{state.self, n.neighbor, std::nullopt, false};
                                 },
                                 [&](const RemotePop& p) -> ForwardDecision { return via_pop(state, p.pop, dst); },
                                 [&](const auto&) -> ForwardDecision { return Drop{"unexpected optimized next hop"}; }},
                      match->next_hop);
  }
  return Drop{"no route to " + dst.to_string()};
}

void TableEpochs::publish(std::shared_ptr<const PriorityTables> tables) {
  std::lock_guard lock(mu_);
  tables_ = std::move(tables);
  ++epoch_;
}

std::shared_ptr<const PriorityTables> TableEpochs::current() const {
  std::lock_guard lock(mu_);
  return tables_;
}

std::uint64_t TableEpochs::epoch() const {
  std::lock_guard lock(mu_);
  return epoch_;
}

}  // namespace sbas
