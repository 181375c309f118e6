#pragma once

#include <optional>
#include <vector>

#include "netdefend/graph.hpp"

namespace netdef {

/// Core-periphery network: the core is a clique, every periphery node hangs
/// off exactly one core node, and the periphery loads are balanced within 1.
struct GeneralizedStar {
  Network network;
  std::vector<NodeId> core;
  std::vector<NodeId> periphery;
};

/// Canonical generalized k-star on n nodes: core = 0..k-1, periphery assigned
/// round-robin (node k goes to core 0, node k+1 to core 1, ...). Requires
/// 1 <= k <= n.
GeneralizedStar build_generalized_star(int n, int k);

/// Checks the generalized-star invariants for the given core on the present
/// nodes of g (clique core, degree-1 periphery attached to the core, loads
/// within 1 of each other).
bool check_generalized_star(const Network& g, const std::vector<NodeId>& core);

/// Tries to recognize g as a generalized k-star for some core.
std::optional<GeneralizedStar> find_generalized_star(const Network& g);

}  // namespace netdef
