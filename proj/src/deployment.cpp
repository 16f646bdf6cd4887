#include "sbas/deployment.hpp"

#include <algorithm>

#include "sbas/error.hpp"

namespace sbas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

IpAddress first_host(const Prefix& p) {
  if (p.length() == max_length(p.version())) return p.network();
  auto b = p.network().bytes();
  b[max_length(p.version()) / 8 - 1] |= 1;
  return IpAddress(p.version(), b);
}

// Follows forwarding decisions across PoPs from `start` toward a secure `dst`
// and returns an error string on a loop, a drop, Internet egress, or delivery
// to a customer that does not own the address.
std::optional<std::string> trace_secure(const ControlPlaneRun& run, const PopId& start, const IpAddress& dst,
                                        const CustomerId& owner) {
  PopId at = start;
  std::set<PopId> visited;
  while (true) {
    if (!visited.insert(at).second) return "forwarding loop toward " + dst.to_string() + " from " + start.value;
    auto it = run.pops.find(at);
    if (it == run.pops.end()) return "trace reached unknown PoP " + at.value;
    ForwardDecision d = forward(it->second, AddressCategory::Secure, dst);
    std::optional<std::string> err;
    bool next = false;
    std::visit(Overloaded{[&](const DeliverToCustomer& c) {
                            if (c.customer != owner) err = dst.to_string() + " delivered to " + c.customer + " at " + at.value;
                          },
                          [&](const Encapsulate& e) {
                            at = e.pop;
                            next = true;
                          },
                          [&](const ToInternet&) { err = "secure " + dst.to_string() + " leaves via the Internet at " + at.value; },
                          [&](const ToRouter&) { err = "secure " + dst.to_string() + " hits the control table at " + at.value; },
                          [&](const Drop& x) { err = "secure " + dst.to_string() + " dropped at " + at.value + ": " + x.reason; }},
               d);
    if (err) return err;
    if (!next) return std::nullopt;
  }
}

}  // namespace

ControlPlaneRun run_control_plane(const DeploymentConfig& cfg, const std::set<PopId>& down) {
  if (!cfg.has_sbas()) throw ConfigError("config has no SBAS deployment section");
  cfg.validate();
  const AsNumber sbas_asn = *cfg.sbas_asn;
  const AddressPlan plan = cfg.address_plan();

  std::vector<PopConfig> live;
  for (const auto& p : cfg.pops) {
    if (!down.contains(p.id)) live.push_back(p);
  }

  ControlPlaneRun run;
  RouteFeeds empty;
  std::map<PopId, RouteFeeds> feeds;
  for (const auto& p : live) feeds[p.id] = empty;

  // Where each customer's routes terminate; used for the loop checks below.
  std::map<CustomerId, PopId> active_ingress;

  auto handle_egress = [&](const IbgpUpdate& u, const PopConfig& pop, bool local) {
    EgressRecord rec{u, pop.id, local, check_pop_authorization(u, cfg.authorizations), true, {}, std::nullopt};
    if (!local && !u.sbas_owned) {
      CustomerAnnouncement again{u.prefix, u.as_path, u.communities, u.originating_pop, u.origin};
      rec.revalidated = validate_ingress(again, cfg.roas).ok();
    }
    if (rec.revalidated) rec.targets = egress_targets(u, pop, cfg.authorizations);
    if (!rec.targets.internet.empty()) rec.external = make_egress_announcement(u, sbas_asn);
    if (!local && rec.authorized && rec.revalidated) feeds[pop.id].ibgp.push_back(IbgpRoute{u.prefix, u.originating_pop});
    run.egress.push_back(std::move(rec));
  };

  std::vector<const CustomerConfig*> customers;
  for (const auto& c : cfg.customers) customers.push_back(&c);
  std::sort(customers.begin(), customers.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  std::optional<AddressPool> pool;
  if (cfg.pool) pool.emplace(*cfg.pool);

  for (const CustomerConfig* c : customers) {
    std::optional<PopId> ingress = c->ingress().active(down);
    if (ingress) active_ingress[c->id] = *ingress;
    const PopConfig* ingress_pop = nullptr;
    for (const auto& p : live) {
      if (ingress && p.id == *ingress) ingress_pop = &p;
    }

    for (const Prefix& prefix : c->prefixes) {
      IngressRecord rec{c->id, prefix, ingress, std::nullopt};
      if (!ingress_pop) {
        run.warnings.push_back("customer " + c->id + " has no live ingress PoP");
        run.ingress.push_back(rec);
        continue;
      }
      CustomerAnnouncement ann{prefix, std::vector<AsNumber>(c->prepend + 1, *c->asn), c->communities, *ingress, *c->asn};
      IngressVerdict v = validate_ingress(ann, cfg.roas);
      rec.rejected = v.rejected;
      run.ingress.push_back(rec);
      if (!v.ok()) continue;

      feeds[*ingress].customers.push_back(LocalCustomerRoute{prefix, c->id});
      auto updates = redistribute(*v.validated, live);
      for (auto& u : updates) u.customer = c->id;
      if (updates.size() + 1 != live.size()) {
        run.violations.push_back("redistribution of " + prefix.to_string() + " produced " +
                                 std::to_string(updates.size()) + " updates for " + std::to_string(live.size()) + " PoPs");
      }
      IbgpUpdate self{prefix, *c->asn, *ingress, *ingress, c->communities, ann.as_path, false, c->id};
      handle_egress(self, *ingress_pop, true);
      for (const auto& u : updates) {
        run.updates.push_back(u);
        const PopConfig* target = nullptr;
        for (const auto& p : live) {
          if (p.id == u.target_pop) target = &p;
        }
        handle_egress(u, *target, false);
      }
    }

    if (c->pool_address && ingress_pop) {
      auto a = pool->assign(c->id);
      run.pool_assignments[c->id] = a.address;
      feeds[*ingress].customers.push_back(LocalCustomerRoute{Prefix::host(a.address), c->id});
      IbgpUpdate self{Prefix::host(a.address), sbas_asn, *ingress, *ingress, c->communities, {}, true, c->id};
      handle_egress(self, *ingress_pop, true);
      for (auto u : announce_assignment(a, c->id, *ingress, live, sbas_asn)) {
        u.communities = c->communities;
        run.updates.push_back(u);
        for (const auto& p : live) {
          if (p.id == u.target_pop) handle_egress(u, p, false);
        }
      }
    }
  }

  for (const auto& r : cfg.internet_routes) {
    if (feeds.contains(r.pop)) feeds[r.pop].internet.push_back(r.route);
  }
  for (auto& [id, f] : feeds) {
    for (const auto& p : live) f.routers.push_back(RouterAddress{p.internal_address, p.id});
  }

  for (const auto& p : live) {
    PopState st;
    st.self = p.id;
    TableBuild tb = build_tables(feeds[p.id], plan);
    st.tables = std::move(tb.tables);
    for (auto& w : tb.warnings) run.warnings.push_back(p.id.value + ": " + w);
    for (const auto& q : live) {
      auto loc = cfg.locators.find(q.id);
      st.internal.add(q.id, Locator{q.internal_address,
                                    loc != cfg.locators.end() ? loc->second : q.internal_address.to_string()});
    }
    std::map<Prefix, std::vector<EgressOption>> options;
    for (const auto& r : cfg.internet_routes) {
      if (down.contains(r.pop)) continue;
      if (plan.classify(r.route.prefix) != AddressCategory::Global) continue;
      options[r.route.prefix].push_back(
          EgressOption{EgressCandidate{r.pop, r.route.as_path_length, r.origin_history}, r.route.neighbor});
    }
    for (auto& [prefix, opts] : options) st.egress.insert(prefix, std::move(opts));
    st.hijack_guard = cfg.hijack_guard;
    st.guard_window = cfg.guard_window;
    st.now = cfg.now;
    run.pops.emplace(p.id, std::move(st));
  }

  // SBAS-only containment.
  for (const auto& e : run.egress) {
    if (e.update.communities.contains(SbasCommunity::SbasOnly) && (!e.targets.internet.empty() || e.external)) {
      run.violations.push_back("SBAS-only prefix " + e.update.prefix.to_string() + " exported to the Internet at " +
                               e.at_pop.value);
    }
  }
  for (const auto& u : run.updates) {
    if (u.originating_pop == u.target_pop) {
      run.violations.push_back("iBGP update for " + u.prefix.to_string() + " addressed to its own ingress");
    }
  }

  // Every secure destination must be delivered to its owner from every PoP.
  for (const CustomerConfig* c : customers) {
    if (!active_ingress.contains(c->id)) continue;
    std::vector<IpAddress> dsts;
    for (const auto& rec : run.ingress) {
      if (rec.customer == c->id && !rec.rejected && rec.ingress) dsts.push_back(first_host(rec.prefix));
    }
    if (auto it = run.pool_assignments.find(c->id); it != run.pool_assignments.end()) dsts.push_back(it->second);
    for (const auto& dst : dsts) {
      for (const auto& [id, st] : run.pops) {
        if (!st.tables.table(Tier::Secure).lookup(dst)) {
          run.warnings.push_back(id.value + " holds no secure route for " + dst.to_string());
          continue;
        }
        if (auto err = trace_secure(run, id, dst, c->id)) run.violations.push_back(*err);
      }
    }
    if (c->vpn_endpoint) {
      for (const auto& [id, st] : run.pops) {
        auto m = st.tables.lookup(*c->vpn_endpoint);
        if (m && m->tier == Tier::Secure) {
          run.violations.push_back("VPN endpoint of " + c->id + " resolves through the secure table at " + id.value);
        }
      }
    }
  }
  return run;
}

}  // namespace sbas
