#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbas/attack.hpp"
#include "sbas/config.hpp"
#include "sbas/deployment.hpp"
#include "sbas/error.hpp"
#include "sbas/latency.hpp"
#include "sbas/parallel.hpp"
#include "sbas/placement.hpp"
#include "sbas/rng.hpp"
#include "sbas/synthetic.hpp"
#include "sbas/topology.hpp"

namespace sbas::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join(const std::vector<AsNumber>& v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].to_string();
  }
  return s;
}

std::vector<AsNumber> parse_asn_list(const std::string& text) {
  std::vector<AsNumber> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (!tok.empty()) out.push_back(parse_asn(tok));
  }
  return out;
}

Topology read_topology(const std::string& path) {
  if (path == "-") return parse_relationships(std::cin);
  return load_relationships(path);
}

// Writes to `path`, or to the command's stdout when the path is empty.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot write output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

unsigned resolve_jobs(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv(kJobsEnv)) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), v);
    if (ec == std::errc{} && v > 0) return v;
  }
  return default_jobs();
}

struct SimulationOptions {
  std::string topology;
  std::string config;
  std::size_t attackers_sample = 0;
  unsigned long long seed = kDefaultSeed;
  bool rov = false;
  unsigned trials = 0;  // 0: take from config (default 1)
  std::string tiebreak;  // empty: take from config
  std::string out;
};

void add_simulation_options(CLI::App* cmd, SimulationOptions& o, bool needs_config) {
  cmd->add_option("--topology", o.topology, "CAIDA serial-2 relationship file ('-' for stdin)")->required();
  auto* c = cmd->add_option("--config", o.config, "deployment config (JSON)");
  if (needs_config) c->required();
  cmd->add_option("--attackers-sample", o.attackers_sample, "number of attacker ASes sampled uniformly (0: use config list)");
  cmd->add_option("--seed", o.seed, "seed for sampling and random tiebreaks")->capture_default_str();
  cmd->add_flag("--rov", o.rov, "attacker forges the legitimate origin (ROV deployed)");
  cmd->add_option("--trials", o.trials, "tiebreak trials per attacker")->check(CLI::PositiveNumber);
  cmd->add_option("--tiebreak", o.tiebreak, "lowest | random")->check(CLI::IsMember({"lowest", "random"}));
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
}

CampaignSettings settings_from(const SimulationOptions& o, const SimulationConfig& sim) {
  CampaignSettings s;
  s.sources = sim.sources;
  s.rov = o.rov;
  s.trials = o.trials ? o.trials : sim.trials;
  bool random = o.tiebreak.empty() ? sim.random_tiebreak : o.tiebreak == "random";
  s.tiebreak = random ? TiebreakPolicy::seeded_random(derive_seed({o.seed, 0x7B})) : TiebreakPolicy::lowest_next_hop();
  s.no_route = sim.no_route;
  return s;
}

std::vector<AsNumber> pick_attackers(const Topology& topo, const SimulationOptions& o,
                                     const std::vector<AsNumber>& configured, const std::vector<AsNumber>& exclude) {
  if (o.attackers_sample > 0) return sample_ases(topo, o.attackers_sample, derive_seed({o.seed, 0xA7}), exclude);
  if (!configured.empty()) return configured;
  throw InvalidArgument("no attackers: pass --attackers-sample or list simulation.attackers in the config");
}

int cmd_topo_stats(const std::string& path, std::ostream& out) {
  Topology t = read_topology(path);
  std::size_t stubs = 0;
  std::size_t tier1 = 0;
  for (Topology::Index i = 0; i < t.size(); ++i) {
    if (t.customers(i).empty()) ++stubs;
    if (t.providers(i).empty()) ++tier1;
  }
  out << "metric,value\n";
  out << "ases," << t.size() << "\n";
  out << "edges," << t.edges().size() << "\n";
  out << "provider_customer_edges," << t.provider_edge_count() << "\n";
  out << "peer_edges," << t.peer_edge_count() << "\n";
  out << "stub_ases," << stubs << "\n";
  out << "provider_free_ases," << tier1 << "\n";
  return 0;
}

int cmd_hijack(const std::string& topo_path, const std::string& victims, const std::string& attacker,
               const std::string& legit, bool rov, const std::string& tiebreak, unsigned long long seed,
               const std::string& out_path, std::ostream& out) {
  Topology t = read_topology(topo_path);
  auto nodes = parse_asn_list(victims);
  AsNumber a = parse_asn(attacker);
  AsNumber origin = legit.empty() ? nodes.at(0) : parse_asn(legit);
  TiebreakPolicy tb = tiebreak == "random" ? TiebreakPolicy::seeded_random(derive_seed({seed, 0x7B}))
                                           : TiebreakPolicy::lowest_next_hop();
  HijackOutcome h = simulate_hijack(t, nodes, a, origin, rov, tb);
  Output o(out_path, out);
  *o << "asn,outcome,route_class,path\n";
  for (Topology::Index i = 0; i < t.size(); ++i) {
    *o << t.asn(i).to_string() << ',' << to_string(h.classification[i]) << ',';
    if (auto r = h.rib.route(i)) {
      *o << to_string(r->route_class) << ',' << join(r->as_path, ' ');
    } else {
      *o << ',';
    }
    *o << '\n';
  }
  return 0;
}

int cmd_resilience(const SimulationOptions& o, unsigned jobs, const std::string& summary_path, std::ostream& out,
                   std::ostream& err) {
  Topology t = read_topology(o.topology);
  DeploymentConfig cfg = load_config(o.config);
  if (!cfg.simulation) throw ConfigError(o.config + ": no 'simulation' section");
  const auto& sim = *cfg.simulation;
  if (sim.deployments.empty()) throw ConfigError(o.config + ": simulation.deployments is empty");

  std::vector<AsNumber> exclude;
  for (const auto& d : sim.deployments) {
    exclude.insert(exclude.end(), d.nodes.begin(), d.nodes.end());
    exclude.push_back(d.legit_origin);
  }
  CampaignSettings s = settings_from(o, sim);
  s.attackers = pick_attackers(t, o, sim.attackers, exclude);
  ResilienceReport rep = run_campaign(t, sim.deployments, s, jobs);

  {
    Output csv(o.out, out);
    *csv << "victim_id,nodes,attacker,rov,beta\n";
    for (const auto& d : rep.deployments) {
      for (std::size_t i = 0; i < d.attackers.size(); ++i) {
        *csv << d.deployment.id << ',' << join(d.deployment.nodes) << ',' << d.attackers[i].to_string() << ','
             << (d.rov ? 1 : 0) << ',' << fmt(d.per_attacker[i]) << '\n';
      }
    }
  }
  std::ostringstream sum;
  sum << "victim_id,nodes,attackers,rov,beta_mean,beta_median,median_gain_percent\n";
  for (std::size_t k = 0; k < rep.deployments.size(); ++k) {
    const auto& d = rep.deployments[k];
    sum << d.deployment.id << ',' << join(d.deployment.nodes) << ',' << d.attackers.size() << ',' << (d.rov ? 1 : 0)
        << ',' << fmt(d.beta_mean) << ',' << fmt(d.beta_median) << ','
        << (rep.median_gain_percent[k] ? fmt(*rep.median_gain_percent[k]) : "undefined") << '\n';
  }
  if (!summary_path.empty()) {
    Output so(summary_path, out);
    *so << sum.str();
  } else {
    (o.out.empty() ? err : out) << sum.str();
  }
  return 0;
}

int cmd_serial(const SimulationOptions& o, unsigned jobs, const std::string& baseline_id, const std::string& sbas_id,
               std::ostream& out) {
  Topology t = read_topology(o.topology);
  DeploymentConfig cfg = load_config(o.config);
  if (!cfg.simulation) throw ConfigError(o.config + ": no 'simulation' section");
  const auto& sim = *cfg.simulation;
  auto find = [&](const std::string& id) -> const VictimDeployment& {
    for (const auto& d : sim.deployments) {
      if (d.id == id) return d;
    }
    throw ConfigError("no deployment with id '" + id + "'");
  };
  const VictimDeployment& base = find(baseline_id);
  const VictimDeployment& sb = find(sbas_id);
  std::vector<AsNumber> attackers = sim.serial_hijackers;
  if (o.attackers_sample > 0 || attackers.empty()) {
    std::vector<AsNumber> exclude = base.nodes;
    exclude.insert(exclude.end(), sb.nodes.begin(), sb.nodes.end());
    exclude.push_back(base.legit_origin);
    attackers = pick_attackers(t, o, attackers, exclude);
  }
  CampaignSettings s = settings_from(o, sim);
  auto rows = serial_hijacker_study(t, attackers, base, sb, s, jobs);
  Output csv(o.out, out);
  *csv << "attacker,beta_base,beta_sbas,gain_percent\n";
  std::vector<double> gains;
  for (const auto& r : rows) {
    *csv << r.attacker.to_string() << ',' << fmt(r.beta_base) << ',' << fmt(r.beta_sbas) << ','
         << (r.gain_percent ? fmt(*r.gain_percent) : "undefined") << '\n';
    if (r.gain_percent) gains.push_back(*r.gain_percent);
  }
  if (!o.out.empty() && !gains.empty()) {
    out << "median_gain_percent," << fmt(median(gains)) << "\nmean_gain_percent," << fmt(mean(gains)) << '\n';
  }
  return 0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

int cmd_cdf(const std::string& in_path, bool by_victim, const std::string& out_path, std::ostream& out) {
  std::ifstream in(in_path);
  if (!in) throw Error("cannot open '" + in_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(in_path + ": empty file");
  auto header = split_csv_line(line);
  auto col = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ParseError(in_path + ": no '" + name + "' column");
  };
  const std::size_t beta_col = col("beta");
  const std::size_t id_col = by_victim ? col("victim_id") : 0;

  std::vector<double> values;
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ParseError(in_path + ":" + std::to_string(line_no) + ": wrong field count");
    double v = 0;
    auto [ptr, ec] = std::from_chars(f[beta_col].data(), f[beta_col].data() + f[beta_col].size(), v);
    if (ec != std::errc{} || ptr != f[beta_col].data() + f[beta_col].size()) {
      throw ParseError(in_path + ":" + std::to_string(line_no) + ": invalid beta '" + f[beta_col] + "'");
    }
    if (by_victim) {
      if (!groups.contains(f[id_col])) order.push_back(f[id_col]);
      groups[f[id_col]].push_back(v);
    } else {
      values.push_back(v);
    }
  }
  if (by_victim) {
    for (const auto& id : order) values.push_back(mean(groups[id]));
  }
  auto cdf = resilience_cdf(values);
  Output o(out_path, out);
  *o << "resilience,cdf\n";
  for (const auto& p : cdf) *o << fmt(p.value) << ',' << fmt(p.fraction) << '\n';
  return 0;
}

int cmd_placement(const SimulationOptions& o, unsigned jobs, const std::string& mode, std::size_t k,
                  std::uint64_t budget, std::optional<std::size_t> holdout, std::ostream& out,
                  std::ostream& err) {
  Topology t = read_topology(o.topology);
  DeploymentConfig cfg = load_config(o.config);
  if (!cfg.placement) throw ConfigError(o.config + ": no 'placement' section");
  const auto& pc = *cfg.placement;
  SimulationConfig sim = cfg.simulation.value_or(SimulationConfig{});

  std::vector<AsNumber> exclude = pc.candidates;
  exclude.push_back(pc.legit_origin);
  CampaignSettings s = settings_from(o, sim);

  PlacementProblem problem;
  problem.candidates = pc.candidates;
  problem.k = k ? k : pc.k;
  problem.context.topology = &t;
  problem.context.legit_origin = pc.legit_origin;
  if (o.attackers_sample > 0) {
    problem.context.attackers = sample_ases(t, o.attackers_sample, derive_seed({o.seed, 0xB1}), exclude);
  } else {
    problem.context.attackers = pick_attackers(t, o, sim.attackers, exclude);
  }
  problem.context.sources = s.sources;
  problem.context.rov = s.rov;
  problem.context.trials = s.trials;
  problem.context.tiebreak = s.tiebreak;
  problem.context.no_route = s.no_route;

  Output csv(o.out, out);
  PlacementScore best;
  *csv << "subset,beta_mean,beta_median\n";
  if (mode == "exhaustive") {
    auto res = exhaustive_best(problem, budget, jobs);
    for (const auto& e : res.evaluated) *csv << join(e.nodes) << ',' << fmt(e.beta_mean) << ',' << fmt(e.beta_median) << '\n';
    best = res.best;
  } else {
    auto res = greedy_best(problem, jobs);
    for (const auto& step : res.steps) {
      for (const auto& e : step.considered) {
        *csv << join(e.nodes) << ',' << fmt(e.beta_mean) << ',' << fmt(e.beta_median) << '\n';
      }
    }
    best = res.best;
  }
  // The chosen set is re-scored against attackers never seen during the search.
  std::optional<PlacementScore> held;
  std::size_t held_count = holdout.value_or(o.attackers_sample);
  if (held_count > 0) {
    std::vector<AsNumber> ex2 = exclude;
    ex2.insert(ex2.end(), problem.context.attackers.begin(), problem.context.attackers.end());
    PlacementProblem eval = problem;
    eval.context.attackers = sample_ases(t, held_count, derive_seed({o.seed, 0xE7}), ex2);
    if (!eval.context.attackers.empty()) held = evaluate_placement(eval, best.nodes);
  }
  std::ostream& so = o.out.empty() ? err : out;
  so << "mode," << mode << "\nchosen," << join(best.nodes) << "\nbeta_mean," << fmt(best.beta_mean)
     << "\nbeta_median," << fmt(best.beta_median) << '\n';
  if (held) so << "holdout_beta_mean," << fmt(held->beta_mean) << "\nholdout_beta_median," << fmt(held->beta_median) << '\n';
  return 0;
}

int cmd_sbas_check(const std::string& config_path, const std::string& down_list, const std::string& out_path,
                   const std::string& tables_dir, std::ostream& out, std::ostream& err) {
  DeploymentConfig cfg = load_config(config_path);
  std::set<PopId> down;
  std::stringstream ss(down_list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    if (!cfg.find_pop(PopId{tok})) throw InvalidArgument("--down names unknown PoP '" + tok + "'");
    down.insert(PopId{tok});
  }
  ControlPlaneRun run = run_control_plane(cfg, down);

  {
    Output o(out_path, out);
    *o << "prefix,customer,ingress_pop,at_pop,kind,status,customer_targets,internet_targets,external_path\n";
    for (const auto& r : run.ingress) {
      if (r.rejected || !r.ingress) {
        *o << r.prefix.to_string() << ',' << r.customer << ',' << (r.ingress ? r.ingress->value : "") << ",,ingress,"
           << (r.rejected ? std::string("rejected:") + to_string(*r.rejected) : "no-ingress") << ",,,\n";
      }
    }
    for (const auto& e : run.egress) {
      std::string status = !e.authorized ? "unauthorized" : !e.revalidated ? "invalid" : "ok";
      std::string cust;
      for (std::size_t i = 0; i < e.targets.customers.size(); ++i) cust += (i ? ";" : "") + e.targets.customers[i];
      *o << e.update.prefix.to_string() << ',' << e.update.customer.value_or(e.update.origin.to_string()) << ','
         << e.update.originating_pop.value << ',' << e.at_pop.value << ',' << (e.local ? "local" : "ibgp") << ','
         << status << ',' << cust << ',' << join(e.targets.internet) << ','
         << (e.external ? join(e.external->as_path, ' ') : "") << '\n';
    }
  }
  if (!tables_dir.empty()) {
    std::filesystem::create_directories(tables_dir);
    for (const auto& [id, st] : run.pops) {
      Output t((std::filesystem::path(tables_dir) / (id.value + ".csv")).string(), out);
      *t << st.tables.dump_csv();
    }
  }
  for (const auto& w : run.warnings) err << "warning: " << w << '\n';
  for (const auto& v : run.violations) err << "violation: " << v << '\n';
  if (!out_path.empty()) {
    out << "pops," << run.pops.size() << "\nibgp_updates," << run.updates.size() << "\nviolations,"
        << run.violations.size() << '\n';
  }
  return run.violations.empty() ? 0 : 3;
}

int cmd_latency(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  DeploymentConfig cfg = load_config(config_path);
  if (!cfg.latency) throw ConfigError(config_path + ": no 'latency' section");
  if (!cfg.has_sbas()) throw ConfigError(config_path + ": latency needs the PoP and customer sections");
  const auto& lc = *cfg.latency;
  Output o(out_path, out);
  *o << "source,destination,ingress_pop,egress_pop,backbone_ms,latency_ms\n";
  for (const auto& s : cfg.customers) {
    for (const auto& d : cfg.customers) {
      if (s.id == d.id) continue;
      auto si = lc.ingress_ms.find(s.id);
      auto di = lc.ingress_ms.find(d.id);
      if (si == lc.ingress_ms.end() || di == lc.ingress_ms.end()) continue;
      const PopId& ip = s.primary_ingress;
      const PopId& ep = d.primary_ingress;
      double backbone = 0.0;
      if (ip != ep) {
        auto paths = lc.paths(ip, ep);
        if (paths.empty()) continue;
        backbone = pop_pair_latency(paths);
      }
      double total = end_to_end(LatencyBreakdown{si->second, di->second, lc.pop_delay_ms, backbone});
      *o << s.id << ',' << d.id << ',' << ip.value << ',' << ep.value << ',' << fmt(backbone) << ',' << fmt(total)
         << '\n';
    }
  }
  return 0;
}

int cmd_topo_generate(std::size_t ases, unsigned long long seed, double peer_links, const std::string& out_path,
                      std::ostream& out) {
  SyntheticParams p;
  p.ases = ases;
  p.seed = seed;
  p.peer_links_per_as = peer_links;
  Topology t = generate_synthetic(p);
  Output o(out_path, out);
  *o << "# synthetic hierarchical topology: ases=" << ases << " seed=" << seed << "\n";
  *o << serialize_relationships(t);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hijack-resilience simulation and secure-backbone control-plane toolkit", "sbaslab"};
  app.require_subcommand(1);
  int jobs_flag = 0;
  app.add_option("--jobs,-j", jobs_flag, std::string("worker threads (default: $") + kJobsEnv + " or all cores)");

  auto* topo = app.add_subcommand("topo", "topology utilities");
  topo->require_subcommand(1);
  std::string topo_path;
  auto* stats = topo->add_subcommand("stats", "node and edge counts");
  stats->add_option("--topology", topo_path, "relationship file ('-' for stdin)")->required();
  std::size_t gen_ases = 1000;
  unsigned long long gen_seed = kDefaultSeed;
  double gen_peer = 0.3;
  std::string gen_out;
  auto* gen = topo->add_subcommand("generate", "write a synthetic hierarchical topology");
  gen->add_option("--ases", gen_ases, "number of ASes")->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--peer-links", gen_peer, "lateral peer links per AS")->capture_default_str();
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  std::string h_topo, h_victims, h_attacker, h_legit, h_tiebreak = "lowest", h_out;
  bool h_rov = false;
  unsigned long long h_seed = kDefaultSeed;
  auto* hijack = app.add_subcommand("hijack", "single hijack simulation, per-AS outcome CSV");
  hijack->add_option("--topology", h_topo, "relationship file")->required();
  hijack->add_option("--victims", h_victims, "comma-separated announcement node ASNs")->required();
  hijack->add_option("--attacker", h_attacker, "attacker ASN")->required();
  hijack->add_option("--legit-origin", h_legit, "legitimate origin ASN (default: first victim)");
  hijack->add_flag("--rov", h_rov, "attacker forges the legitimate origin");
  hijack->add_option("--tiebreak", h_tiebreak, "lowest | random")->check(CLI::IsMember({"lowest", "random"}));
  hijack->add_option("--seed", h_seed, "seed for random tiebreaks")->capture_default_str();
  hijack->add_option("--out", h_out, "output CSV path (default: stdout)");

  SimulationOptions r_opts;
  std::string r_summary;
  auto* res = app.add_subcommand("resilience", "resilience campaign over the configured deployments");
  add_simulation_options(res, r_opts, true);
  res->add_option("--summary", r_summary, "per-deployment summary CSV path");

  SimulationOptions s_opts;
  std::string s_base = "baseline", s_sbas = "sbas";
  auto* serial = app.add_subcommand("serial", "per-attacker baseline vs SBAS comparison");
  add_simulation_options(serial, s_opts, true);
  serial->add_option("--baseline", s_base, "baseline deployment id")->capture_default_str();
  serial->add_option("--sbas", s_sbas, "SBAS deployment id")->capture_default_str();

  std::string c_in, c_out;
  bool c_by_victim = false;
  auto* cdf = app.add_subcommand("cdf", "CDF table from a resilience CSV");
  cdf->add_option("--in", c_in, "resilience CSV (victim_id,nodes,attacker,rov,beta)")->required();
  cdf->add_flag("--by-victim", c_by_victim, "average beta per victim_id before building the CDF");
  cdf->add_option("--out", c_out, "output CSV path (default: stdout)");

  SimulationOptions p_opts;
  std::string p_mode = "greedy";
  std::size_t p_k = 0;
  std::uint64_t p_budget = 1'000'000;
  auto* place = app.add_subcommand("placement", "choose announcement node locations");
  add_simulation_options(place, p_opts, true);
  place->add_option("--mode", p_mode, "exhaustive | greedy")->check(CLI::IsMember({"exhaustive", "greedy"}))->capture_default_str();
  place->add_option("--k", p_k, "number of nodes (default: config placement.k)");
  place->add_option("--budget", p_budget, "maximum subsets for exhaustive search")->capture_default_str();
  std::optional<std::size_t> p_holdout;
  place->add_option("--holdout", p_holdout,
                    "held-out attackers for scoring the chosen set (default: same as --attackers-sample, 0: off)");

  auto* sbas_cmd = app.add_subcommand("sbas", "SBAS control-plane tools");
  sbas_cmd->require_subcommand(1);
  std::string k_config, k_down, k_out, k_tables;
  auto* check = sbas_cmd->add_subcommand("check", "validate a deployment config end to end");
  check->add_option("--config", k_config, "deployment config (JSON)")->required();
  check->add_option("--down", k_down, "comma-separated PoPs to treat as failed");
  check->add_option("--out", k_out, "route report CSV path (default: stdout)");
  check->add_option("--tables-dir", k_tables, "directory for per-PoP table dumps");

  std::string l_config, l_out;
  auto* lat = app.add_subcommand("latency", "end-to-end latency model for customer pairs");
  lat->add_option("--config", l_config, "deployment config with a 'latency' section")->required();
  lat->add_option("--out", l_out, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const unsigned jobs = resolve_jobs(jobs_flag);
    if (*stats) return cmd_topo_stats(topo_path, out);
    if (*gen) return cmd_topo_generate(gen_ases, gen_seed, gen_peer, gen_out, out);
    if (*hijack) return cmd_hijack(h_topo, h_victims, h_attacker, h_legit, h_rov, h_tiebreak, h_seed, h_out, out);
    if (*res) return cmd_resilience(r_opts, jobs, r_summary, out, err);
    if (*serial) return cmd_serial(s_opts, jobs, s_base, s_sbas, out);
    if (*cdf) return cmd_cdf(c_in, c_by_victim, c_out, out);
    if (*place) return cmd_placement(p_opts, jobs, p_mode, p_k, p_budget, p_holdout, out, err);
    if (*check) return cmd_sbas_check(k_config, k_down, k_out, k_tables, out, err);
    if (*lat) return cmd_latency(l_config, l_out, out);
  } catch (const std::exception& e) {
    err << "sbaslab: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace sbas::cli
