#include "netdefend/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace netdef {

Network::Network(int n) : n_(n), present_(static_cast<std::size_t>(n), 1) {
  if (n < 0) throw std::invalid_argument("node count must be >= 0");
}

Network::Network(int n, std::vector<std::pair<NodeId, NodeId>> edges)
    : Network(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

Network Network::from_json(const nlohmann::json& j) {
  Network g(j.at("n").get<int>());
  if (j.contains("nodes")) {
    std::fill(g.present_.begin(), g.present_.end(), 0);
    for (const auto& v : j.at("nodes")) {
      int id = v.get<int>();
      if (id < 0 || id >= g.n_) throw std::invalid_argument("node id out of range");
      g.present_[static_cast<std::size_t>(id)] = 1;
    }
  }
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  return g;
}

nlohmann::json Network::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  if (!full()) j["nodes"] = nodes();
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : edges_) edges.push_back({u, v});
  j["edges"] = edges;
  return j;
}

int Network::node_count() const {
  return static_cast<int>(std::count(present_.begin(), present_.end(), 1));
}

bool Network::has_node(NodeId v) const {
  return v >= 0 && v < n_ && present_[static_cast<std::size_t>(v)];
}

std::vector<NodeId> Network::nodes() const {
  std::vector<NodeId> out;
  for (int v = 0; v < n_; ++v)
    if (present_[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

bool Network::full() const { return node_count() == n_; }

void Network::add_edge(NodeId u, NodeId v) {
  if (!has_node(u) || !has_node(v))
    throw std::invalid_argument("edge endpoint is not a node of the network");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u > v) std::swap(u, v);
  auto e = std::make_pair(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return;  // duplicate
  edges_.insert(it, e);
}

bool Network::has_edge(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

int Network::degree(NodeId v) const {
  int d = 0;
  for (auto [a, b] : edges_)
    if (a == v || b == v) ++d;
  return d;
}

std::vector<std::vector<NodeId>> Network::components() const {
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n_));
  for (auto [u, v] : edges_) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<std::vector<NodeId>> out;
  for (int start = 0; start < n_; ++start) {
    if (!present_[static_cast<std::size_t>(start)] ||
        seen[static_cast<std::size_t>(start)])
      continue;
    std::vector<NodeId> comp{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (NodeId w : adj[static_cast<std::size_t>(comp[i])])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  // Iteration starts at the smallest unseen node, so components are already
  // ordered by smallest member.
  return out;
}

Network Network::without_nodes(const std::vector<NodeId>& z) const {
  for (NodeId v : z)
    if (!has_node(v))
      throw std::invalid_argument("cannot remove unknown node " +
                                  std::to_string(v));
  Network g = *this;
  for (NodeId v : z) g.present_[static_cast<std::size_t>(v)] = 0;
  std::erase_if(g.edges_, [&](const auto& e) {
    return !g.present_[static_cast<std::size_t>(e.first)] ||
           !g.present_[static_cast<std::size_t>(e.second)];
  });
  return g;
}

Int network_value(const Network& g, const ValueFunction& f) {
  Int total = 0;
  for (const auto& comp : g.components())
    total += f(static_cast<int>(comp.size()));
  return total;
}

Network disjoint_union(const Network& a, const Network& b) {
  if (!a.full() || !b.full())
    throw std::invalid_argument("disjoint_union expects full networks");
  Network g(a.label_count() + b.label_count());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges())
    g.add_edge(u + a.label_count(), v + a.label_count());
  return g;
}

}  // namespace netdef
