#include "sbas/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sbas/error.hpp"

namespace sbas {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AsNumber asn_of(const json& j, const std::string& what) {
  std::optional<AsNumber> a;
  if (j.is_number_unsigned()) {
    a = AsNumber(j.get<std::uint64_t>());
  } else if (j.is_number_integer() && j.get<std::int64_t>() > 0) {
    a = AsNumber(static_cast<std::uint64_t>(j.get<std::int64_t>()));
  } else if (j.is_string()) {
    a = parse_asn(j.get<std::string>());
  }
  if (!a || !a->valid()) throw ConfigError(what + ": expected a positive AS number");
  return *a;
}

std::vector<AsNumber> asns_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + ": expected an array of AS numbers");
  std::vector<AsNumber> out;
  for (const auto& x : j) out.push_back(asn_of(x, what));
  return out;
}

std::string str_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  throw ConfigError(what + ": expected a string");
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
  return *it;
}


PopConfig parse_pop(const json& j, AsNumber sbas_asn) {
  std::string id = str_of(need(j, "id", "pop"), "pop.id");
  std::string where = "pop '" + id + "'";
  Prefix internal = Prefix::parse(str_of(need(j, "internal_prefix", where), where + ".internal_prefix"));
  IpAddress router = internal.network();
  if (j.contains("router_address")) {
    router = IpAddress::parse(str_of(j["router_address"], where + ".router_address"));
  } else if (internal.length() < max_length(internal.version())) {
    auto bytes = router.bytes();
    bytes[max_length(internal.version()) / 8 - 1] |= 1;
    router = IpAddress(router.version(), bytes);
  }
  if (!internal.contains(router)) throw ConfigError(where + ": router address outside internal prefix");
  PopConfig p{PopId{id}, sbas_asn, internal, router, {}, {}};
  if (j.contains("internet_peers")) p.internet_peers = asns_of(j["internet_peers"], where + ".internet_peers");
  if (j.contains("customers")) {
    for (const auto& c : j["customers"]) p.customers.push_back(CustomerAttachment{str_of(c, where + ".customers"), {}});
  }
  return p;
}

CustomerConfig parse_customer(const json& j) {
  CustomerConfig c;
  if (j.contains("asn")) c.asn = asn_of(j["asn"], "customer.asn");
  if (j.contains("id")) {
    c.id = str_of(j["id"], "customer.id");
  } else if (c.asn) {
    c.id = c.asn->to_string();
  } else {
    throw ConfigError("customer needs an 'id' or an 'asn'");
  }
  std::string where = "customer '" + c.id + "'";
  if (j.contains("prefixes")) {
    for (const auto& p : j["prefixes"]) c.prefixes.push_back(Prefix::parse(str_of(p, where + ".prefixes")));
  }
  if (!c.prefixes.empty() && !c.asn) throw ConfigError(where + ": prefixes need an 'asn'");
  c.primary_ingress = PopId{str_of(need(j, "primary_ingress", where), where + ".primary_ingress")};
  if (j.contains("backup_ingress")) {
    const auto& b = j["backup_ingress"];
    if (b.is_array()) {
      for (const auto& x : b) c.backup_ingress.push_back(PopId{str_of(x, where + ".backup_ingress")});
    } else {
      c.backup_ingress.push_back(PopId{str_of(b, where + ".backup_ingress")});
    }
  }
  if (j.contains("communities")) {
    for (const auto& x : j["communities"]) c.communities.insert(parse_community(str_of(x, where + ".communities")));
  }
  if (j.contains("vpn_endpoint")) c.vpn_endpoint = IpAddress::parse(str_of(j["vpn_endpoint"], where + ".vpn_endpoint"));
  if (j.contains("prepend")) c.prepend = j["prepend"].get<unsigned>();
  if (j.contains("pool_address")) c.pool_address = j["pool_address"].get<bool>();
  return c;
}

VictimDeployment parse_victim(const json& j) {
  VictimDeployment d;
  d.id = str_of(need(j, "id", "deployment"), "deployment.id");
  d.nodes = asns_of(need(j, "nodes", "deployment '" + d.id + "'"), "deployment.nodes");
  d.legit_origin = asn_of(need(j, "legit_origin", "deployment '" + d.id + "'"), "deployment.legit_origin");
  return d;
}

}  // namespace

std::vector<double> LatencyConfig::paths(const PopId& a, const PopId& b) const {
  std::vector<double> out;
  for (const auto& bp : backbone) {
    if ((bp.from == a && bp.to == b) || (bp.from == b && bp.to == a)) {
      out.insert(out.end(), bp.paths_ms.begin(), bp.paths_ms.end());
    }
  }
  return out;
}

const PopConfig* DeploymentConfig::find_pop(const PopId& id) const {
  for (const auto& p : pops) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const CustomerConfig* DeploymentConfig::find_customer(const CustomerId& id) const {
  for (const auto& c : customers) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

AddressPlan DeploymentConfig::address_plan() const {
  std::vector<Prefix> secure;
  for (const auto& c : customers) secure.insert(secure.end(), c.prefixes.begin(), c.prefixes.end());
  if (pool) secure.push_back(*pool);
  std::vector<Prefix> internal;
  for (const auto& p : pops) internal.push_back(p.internal_prefix);
  return AddressPlan(std::move(secure), std::move(internal));
}

void DeploymentConfig::validate() const {
  if (!has_sbas()) return;
  if (pops.empty()) throw ConfigError("deployment has no PoPs");
  std::set<PopId> ids;
  std::set<IpAddress> routers;
  for (const auto& p : pops) {
    if (!ids.insert(p.id).second) throw ConfigError("duplicate PoP id '" + p.id.value + "'");
    if (!routers.insert(p.internal_address).second) {
      throw ConfigError("internal address " + p.internal_address.to_string() + " is used by more than one PoP");
    }
    for (const auto& c : p.customers) {
      if (!find_customer(c.id)) throw ConfigError("PoP '" + p.id.value + "' lists unknown customer '" + c.id + "'");
    }
  }
  for (std::size_t i = 0; i < pops.size(); ++i) {
    for (std::size_t j = i + 1; j < pops.size(); ++j) {
      if (pops[i].internal_prefix.overlaps(pops[j].internal_prefix)) {
        throw ConfigError("internal prefixes of '" + pops[i].id.value + "' and '" + pops[j].id.value + "' overlap");
      }
    }
  }
  std::set<CustomerId> cids;
  for (const auto& c : customers) {
    if (!cids.insert(c.id).second) throw ConfigError("duplicate customer id '" + c.id + "'");
    if (!ids.contains(c.primary_ingress)) {
      throw ConfigError("customer '" + c.id + "' has unknown primary ingress '" + c.primary_ingress.value + "'");
    }
    for (const auto& b : c.backup_ingress) {
      if (!ids.contains(b)) throw ConfigError("customer '" + c.id + "' has unknown backup ingress '" + b.value + "'");
    }
    if (c.pool_address && !pool) throw ConfigError("customer '" + c.id + "' wants a pool address but no pool is set");
  }
  AddressPlan plan = address_plan();
  for (const auto& c : customers) {
    if (c.vpn_endpoint && plan.classify(*c.vpn_endpoint) == AddressCategory::Secure) {
      throw ConfigError("customer '" + c.id + "' VPN endpoint " + c.vpn_endpoint->to_string() +
                        " is a secure address");
    }
  }
  for (const auto& r : internet_routes) {
    if (!ids.contains(r.pop)) throw ConfigError("internet route at unknown PoP '" + r.pop.value + "'");
  }
  for (const auto& [prefix, auth_pops] : authorizations.records()) {
    for (const auto& p : auth_pops) {
      if (!ids.contains(p)) throw ConfigError("authorization for " + prefix.to_string() + " names unknown PoP '" + p.value + "'");
    }
  }
}

DeploymentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  DeploymentConfig cfg;
  try {
    if (j.contains("sbas_asn")) {
      cfg.sbas_asn = asn_of(j["sbas_asn"], "sbas_asn");
      for (const auto& p : need(j, "pops", "config")) cfg.pops.push_back(parse_pop(p, *cfg.sbas_asn));
      if (j.contains("customers")) {
        for (const auto& c : j["customers"]) cfg.customers.push_back(parse_customer(c));
      }
      // Attachments listed on PoPs get the customer's ASN; ingress PoPs attach implicitly.
      for (auto& p : cfg.pops) {
        for (const auto& c : cfg.customers) {
          bool attached = c.primary_ingress == p.id ||
                          std::find(c.backup_ingress.begin(), c.backup_ingress.end(), p.id) != c.backup_ingress.end();
          auto it = std::find_if(p.customers.begin(), p.customers.end(), [&](const auto& a) { return a.id == c.id; });
          if (it != p.customers.end()) {
            it->asn = c.asn;
          } else if (attached) {
            p.customers.push_back(CustomerAttachment{c.id, c.asn});
          }
        }
      }
      if (j.contains("roas")) {
        for (const auto& r : j["roas"]) {
          Prefix p = Prefix::parse(str_of(need(r, "prefix", "roa"), "roa.prefix"));
          unsigned ml = r.contains("max_length") ? r["max_length"].get<unsigned>() : p.length();
          cfg.roas.emplace_back(p, asn_of(need(r, "origin", "roa"), "roa.origin"), ml);
        }
      }
      if (j.contains("roa_csv")) {
        auto extra = load_roa_csv(base_dir / str_of(j["roa_csv"], "roa_csv"));
        cfg.roas.insert(cfg.roas.end(), extra.begin(), extra.end());
      }
      if (j.contains("authorizations")) {
        for (const auto& a : j["authorizations"]) {
          std::set<PopId> pops;
          for (const auto& p : need(a, "pops", "authorization")) pops.insert(PopId{str_of(p, "authorization.pops")});
          cfg.authorizations.authorize(Prefix::parse(str_of(need(a, "prefix", "authorization"), "authorization.prefix")),
                                       std::move(pops));
        }
      }
      if (j.contains("pool")) {
        const auto& p = j["pool"];
        cfg.pool = Prefix::parse(str_of(p.is_object() ? need(p, "prefix", "pool") : p, "pool.prefix"));
      }
      if (j.contains("internet_routes")) {
        for (const auto& r : j["internet_routes"]) {
          ConfiguredInternetRoute cr;
          cr.pop = PopId{str_of(need(r, "pop", "internet route"), "internet_routes.pop")};
          cr.route.prefix = Prefix::parse(str_of(need(r, "prefix", "internet route"), "internet_routes.prefix"));
          cr.route.neighbor = asn_of(need(r, "neighbor", "internet route"), "internet_routes.neighbor");
          if (r.contains("as_path_length")) cr.route.as_path_length = r["as_path_length"].get<std::size_t>();
          if (cr.route.as_path_length < 1) throw ConfigError("internet route as_path_length must be >= 1");
          if (r.contains("origin_history")) {
            for (const auto& h : r["origin_history"]) {
              cr.origin_history.push_back(
                  OriginObservation{SimTime{need(h, "time", "origin_history").get<std::int64_t>()},
                                    asn_of(need(h, "origin", "origin_history"), "origin_history.origin")});
            }
          }
          cfg.internet_routes.push_back(std::move(cr));
        }
      }
      if (j.contains("locators")) {
        for (const auto& [k, v] : j["locators"].items()) cfg.locators[PopId{k}] = str_of(v, "locators");
      }
      if (j.contains("hijack_guard")) {
        const auto& g = j["hijack_guard"];
        cfg.hijack_guard = g.value("enabled", true);
        cfg.guard_window = SimTime{g.value("window_s", std::int64_t{60})};
        cfg.now = SimTime{g.value("now_s", std::int64_t{0})};
      }
    }

    if (j.contains("simulation")) {
      const auto& s = j["simulation"];
      SimulationConfig sim;
      for (const auto& d : need(s, "deployments", "simulation")) sim.deployments.push_back(parse_victim(d));
      if (s.contains("attackers")) sim.attackers = asns_of(s["attackers"], "simulation.attackers");
      if (s.contains("sources")) sim.sources = asns_of(s["sources"], "simulation.sources");
      if (s.contains("serial_hijackers")) sim.serial_hijackers = asns_of(s["serial_hijackers"], "simulation.serial_hijackers");
      if (s.contains("trials")) sim.trials = s["trials"].get<unsigned>();
      if (s.contains("tiebreak")) {
        auto tb = str_of(s["tiebreak"], "simulation.tiebreak");
        if (tb != "random" && tb != "lowest") throw ConfigError("simulation.tiebreak must be 'random' or 'lowest'");
        sim.random_tiebreak = tb == "random";
      }
      if (s.contains("no_route")) {
        auto nr = str_of(s["no_route"], "simulation.no_route");
        if (nr != "resilient" && nr != "hijacked") throw ConfigError("simulation.no_route must be 'resilient' or 'hijacked'");
        sim.no_route = nr == "resilient" ? NoRoutePolicy::Resilient : NoRoutePolicy::Hijacked;
      }
      cfg.simulation = std::move(sim);
    }

    if (j.contains("placement")) {
      const auto& p = j["placement"];
      PlacementConfig pc;
      pc.candidates = asns_of(need(p, "candidates", "placement"), "placement.candidates");
      pc.legit_origin = asn_of(need(p, "legit_origin", "placement"), "placement.legit_origin");
      if (p.contains("k")) pc.k = p["k"].get<std::size_t>();
      cfg.placement = std::move(pc);
    }

    if (j.contains("latency")) {
      const auto& l = j["latency"];
      LatencyConfig lc;
      if (l.contains("pop_delay_ms")) lc.pop_delay_ms = l["pop_delay_ms"].get<double>();
      if (l.contains("ingress_ms")) {
        for (const auto& [k, v] : l["ingress_ms"].items()) lc.ingress_ms[k] = v.get<double>();
      }
      if (l.contains("backbone")) {
        for (const auto& b : l["backbone"]) {
          BackbonePaths bp{PopId{str_of(need(b, "from", "backbone"), "backbone.from")},
                           PopId{str_of(need(b, "to", "backbone"), "backbone.to")},
                           need(b, "paths_ms", "backbone").get<std::vector<double>>()};
          lc.backbone.push_back(std::move(bp));
        }
      }
      cfg.latency = std::move(lc);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

DeploymentConfig load_config(const std::filesystem::path& path) {
  std::string text = read_file(path);
  try {
    return parse_config(text, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<RoaRecord> parse_roa_csv(const std::string& text) {
  std::vector<RoaRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line_no == 1 && line.rfind("prefix", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 3) throw ParseError("ROA CSV line " + std::to_string(line_no) + ": expected 3 fields");
    try {
      Prefix p = Prefix::parse(f[0]);
      unsigned ml = 0;
      auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), ml);
      if (ec != std::errc{} || ptr != f[2].data() + f[2].size()) throw ParseError("invalid max_length");
      out.emplace_back(p, parse_asn(f[1]), ml);
    } catch (const Error& e) {
      throw ParseError("ROA CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<RoaRecord> load_roa_csv(const std::filesystem::path& path) { return parse_roa_csv(read_file(path)); }

}  // namespace sbas
