#include "netdefend/star.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace netdef {

GeneralizedStar build_generalized_star(int n, int k) {
  if (k < 1 || k > n)
    throw std::invalid_argument("generalized star requires 1 <= k <= n");
  GeneralizedStar star;
  star.network = Network(n);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) star.network.add_edge(i, j);
  for (int i = 0; i < k; ++i) star.core.push_back(i);
  for (int p = k; p < n; ++p) {
    star.network.add_edge(p, (p - k) % k);
    star.periphery.push_back(p);
  }
  return star;
}

bool check_generalized_star(const Network& g, const std::vector<NodeId>& core) {
  std::set<NodeId> core_set(core.begin(), core.end());
  const auto nodes = g.nodes();
  const int n = static_cast<int>(nodes.size());
  const int k = static_cast<int>(core_set.size());
  if (k < 1 || k > n) return false;
  for (NodeId c : core_set)
    if (!g.has_node(c)) return false;

  // Core is a clique.
  for (auto it = core_set.begin(); it != core_set.end(); ++it)
    for (auto jt = std::next(it); jt != core_set.end(); ++jt)
      if (!g.has_edge(*it, *jt)) return false;

  // Periphery nodes have degree 1 with their neighbor in the core.
  std::vector<int> load(core.size(), 0);
  std::vector<NodeId> sorted_core(core_set.begin(), core_set.end());
  for (NodeId v : nodes) {
    if (core_set.count(v)) continue;
    NodeId neighbor = -1;
    int deg = 0;
    for (auto [a, b] : g.edges()) {
      if (a == v) ++deg, neighbor = b;
      if (b == v) ++deg, neighbor = a;
    }
    if (deg != 1 || !core_set.count(neighbor)) return false;
    auto idx = std::lower_bound(sorted_core.begin(), sorted_core.end(), neighbor) -
               sorted_core.begin();
    ++load[static_cast<std::size_t>(idx)];
  }

  // Core nodes carry no stray edges beyond the clique and their periphery.
  for (auto c : sorted_core) {
    int expected = k - 1 + load[static_cast<std::size_t>(
                                std::lower_bound(sorted_core.begin(),
                                                 sorted_core.end(), c) -
                                sorted_core.begin())];
    if (g.degree(c) != expected) return false;
  }

  const int lo = n / k - 1;
  const int hi = (n + k - 1) / k - 1;
  for (int l : load)
    if (l < lo || l > hi) return false;
  return true;
}

std::optional<GeneralizedStar> find_generalized_star(const Network& g) {
  const auto nodes = g.nodes();
  if (nodes.empty()) return std::nullopt;

  auto try_core = [&](const std::vector<NodeId>& core)
      -> std::optional<GeneralizedStar> {
    if (!check_generalized_star(g, core)) return std::nullopt;
    GeneralizedStar star;
    star.network = g;
    star.core = core;
    std::set<NodeId> core_set(core.begin(), core.end());
    for (NodeId v : nodes)
      if (!core_set.count(v)) star.periphery.push_back(v);
    return star;
  };

  std::vector<NodeId> high_degree;
  for (NodeId v : nodes)
    if (g.degree(v) != 1) high_degree.push_back(v);
  if (auto star = try_core(high_degree)) return star;
  // Cliques (all equal degree) and tiny graphs: try the whole node set, then
  // each single node as a plain star center.
  if (auto star = try_core(nodes)) return star;
  for (NodeId v : nodes)
    if (auto star = try_core({v})) return star;
  return std::nullopt;
}

}  // namespace netdef
