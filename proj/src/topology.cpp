#include "sbas/topology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "sbas/error.hpp"

namespace sbas {

namespace {

Edge canonical(const Edge& e) {
  if (e.rel == Relationship::Peer && e.b < e.a) return Edge{e.b, e.a, e.rel};
  return e;
}

std::string describe(const Edge& e) {
  return e.a.to_string() + "|" + e.b.to_string() + "|" + std::to_string(static_cast<int>(e.rel));
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Topology Topology::from_edges(std::span<const Edge> edges) {
  // Keyed by unordered pair so a pair cannot carry two relationships.
  std::map<std::pair<AsNumber, AsNumber>, Edge> unique;
  for (const Edge& raw : edges) {
    if (!raw.a.valid() || !raw.b.valid()) throw ParseError("edge with invalid AS number");
    if (raw.a == raw.b) throw ParseError("self-loop on AS " + raw.a.to_string());
    Edge e = canonical(raw);
    auto key = std::minmax(e.a, e.b);
    auto [it, inserted] = unique.emplace(key, e);
    if (!inserted && it->second != e) {
      throw ParseError("conflicting relationship for AS pair " + key.first.to_string() + "-" +
                       key.second.to_string() + ": " + describe(it->second) + " vs " + describe(e));
    }
  }

  Topology t;
  for (const auto& [key, e] : unique) {
    t.asns_.push_back(e.a);
    t.asns_.push_back(e.b);
  }
  std::sort(t.asns_.begin(), t.asns_.end());
  t.asns_.erase(std::unique(t.asns_.begin(), t.asns_.end()), t.asns_.end());
  for (Index i = 0; i < t.asns_.size(); ++i) t.index_.emplace(t.asns_[i], i);

  t.providers_.resize(t.asns_.size());
  t.customers_.resize(t.asns_.size());
  t.peers_.resize(t.asns_.size());
  for (const auto& [key, e] : unique) {
    Index a = t.index_.at(e.a);
    Index b = t.index_.at(e.b);
    if (e.rel == Relationship::Peer) {
      t.peers_[a].push_back(b);
      t.peers_[b].push_back(a);
    } else {
      t.customers_[a].push_back(b);
      t.providers_[b].push_back(a);
    }
    t.edges_.push_back(e);
  }
  // Index order equals ASN order, so sorting indices sorts by ASN.
  for (auto* lists : {&t.providers_, &t.customers_, &t.peers_}) {
    for (auto& v : *lists) std::sort(v.begin(), v.end());
  }
  std::sort(t.edges_.begin(), t.edges_.end());
  return t;
}

std::optional<Topology::Index> Topology::index_of(AsNumber asn) const {
  auto it = index_.find(asn);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Topology::Index Topology::require(AsNumber asn) const {
  auto it = index_.find(asn);
  if (it == index_.end()) throw InvalidArgument("AS " + asn.to_string() + " is not in the topology");
  return it->second;
}

std::optional<Relationship> Topology::relationship(AsNumber a, AsNumber b) const {
  auto ia = index_of(a);
  auto ib = index_of(b);
  if (!ia || !ib) return std::nullopt;
  auto has = [](std::span<const Index> v, Index x) { return std::binary_search(v.begin(), v.end(), x); };
  if (has(customers_[*ia], *ib)) return Relationship::ProviderToCustomer;
  if (has(peers_[*ia], *ib)) return Relationship::Peer;
  return std::nullopt;
}

std::size_t Topology::provider_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.rel == Relationship::ProviderToCustomer; }));
}

std::size_t Topology::peer_edge_count() const { return edges_.size() - provider_edge_count(); }

Topology parse_relationships(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split(line, '|');
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 or 4 '|'-separated fields");
    }
    Edge e;
    try {
      e.a = parse_asn(fields[0]);
      e.b = parse_asn(fields[1]);
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
    }
    if (fields[2] == "-1") {
      e.rel = Relationship::ProviderToCustomer;
    } else if (fields[2] == "0") {
      e.rel = Relationship::Peer;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": relationship must be -1 or 0, got '" +
                       std::string(fields[2]) + "'");
    }
    if (e.a == e.b) throw ParseError("line " + std::to_string(line_no) + ": self-loop on AS " + e.a.to_string());
    edges.push_back(e);
  }
  return Topology::from_edges(edges);
}

Topology parse_relationships(const std::string& text) {
  std::istringstream in(text);
  return parse_relationships(in);
}

Topology load_relationships(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open topology file '" + path.string() + "'");
  try {
    return parse_relationships(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_relationships(const Topology& topology) {
  std::string out;
  for (const Edge& e : topology.edges()) out += describe(e) + "\n";
  return out;
}

Topology augment_edges(const Topology& topology, std::span<const Edge> extra) {
  std::vector<Edge> all = topology.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Topology::from_edges(all);
}

}  // namespace sbas
