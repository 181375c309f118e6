#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "netdefend/value_function.hpp"

namespace netdef {

using NodeId = int;

/// Undirected simple graph over labeled nodes. Labels live in [0, label_count)
/// and are stable: removing nodes masks them out without renumbering the
/// survivors.
class Network {
 public:
  Network() = default;
  explicit Network(int n);
  Network(int n, std::vector<std::pair<NodeId, NodeId>> edges);

  static Network from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int label_count() const { return n_; }
  int node_count() const;
  bool has_node(NodeId v) const;
  std::vector<NodeId> nodes() const;
  bool full() const;  // every label present

  void add_edge(NodeId u, NodeId v);
  bool has_edge(NodeId u, NodeId v) const;
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  int degree(NodeId v) const;

  /// Partition of the present nodes into connected components, each sorted,
  /// components ordered by smallest member.
  std::vector<std::vector<NodeId>> components() const;

  /// G - Z: removes the nodes of z and their incident edges. Surviving
  /// identities are preserved. Throws std::invalid_argument on unknown ids.
  Network without_nodes(const std::vector<NodeId>& z) const;

  bool operator==(const Network& other) const = default;

 private:
  int n_ = 0;
  std::vector<char> present_;
  std::vector<std::pair<NodeId, NodeId>> edges_;  // u < v, sorted
};

/// Phi(g) = sum over components of f(|C|). Throws std::domain_error if f is
/// not defined up to the largest component size.
Int network_value(const Network& g, const ValueFunction& f);

/// Side-by-side disjoint union; the labels of b are shifted past those of a.
Network disjoint_union(const Network& a, const Network& b);

}  // namespace netdef
